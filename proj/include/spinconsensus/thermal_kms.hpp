#pragma once

#include "hamiltonians.hpp"
#include "spin_algebra.hpp"

#include <cmath>
#include <memory>
#include <string>

namespace spinconsensus
{

/// Largest exponent magnitude allowed in e^{x}; keeps every factor finite.
inline constexpr double kMaxExponent = 700.0;

/// Tolerances on the density-matrix invariants.
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-12;

namespace detail
{

inline void check_exponent(double magnitude, const char* what)
{
	if(!(magnitude <= kMaxExponent))
	{
		throw OverflowRisk(std::string(what) + ": exponent magnitude " + std::to_string(magnitude) +
		                   " exceeds " + std::to_string(kMaxExponent));
	}
}

[[nodiscard]] inline double spectral_width(const Spectrum& s)
{
	return s.values.size() == 0 ? 0.0 : s.values(s.values.size() - 1) - s.values(0);
}

/// V^dagger A V
[[nodiscard]] inline Matrix to_eigenbasis(const Spectrum& s, const Operator& a)
{
	if(a.dim() != s.vectors.rows())
	{
		throw DimensionMismatch("observable dim " + std::to_string(a.dim()) + " vs Hamiltonian dim " +
		                        std::to_string(s.vectors.rows()));
	}
	return s.vectors.adjoint() * a.matrix() * s.vectors;
}

[[nodiscard]] inline Matrix from_eigenbasis(const Spectrum& s, const Matrix& m)
{
	return s.vectors * m * s.vectors.adjoint();
}

/// Boltzmann weights e^{-beta (lambda_k - lambda_0)} / Z for ascending eigenvalues.
[[nodiscard]] inline Eigen::VectorXd boltzmann_weights(const Spectrum& s, double beta)
{
	const double ground = s.values(0);
	Eigen::VectorXd w = (-beta * (s.values.array() - ground)).exp();
	return w / w.sum();
}

} // namespace detail

/// Shared spectral factorization of a Hermitian operator.
using SpectrumPtr = std::shared_ptr<const Spectrum>;

[[nodiscard]] inline SpectrumPtr factorize(const Operator& h)
{
	return std::make_shared<const Spectrum>(spectrum(h));
}

/// e^{sH} = V diag(e^{s lambda}) V^dagger.
[[nodiscard]] inline Operator expm_hermitian(const Spectrum& s, Complex scale)
{
	detail::check_exponent(std::abs(scale.real()) * s.spectral_radius(), "expm_hermitian");
	const Eigen::VectorXcd factors = (scale * s.values.cast<Complex>().array()).exp();
	return Operator(s.vectors * factors.asDiagonal() * s.vectors.adjoint());
}

[[nodiscard]] inline Operator expm_hermitian(const Operator& h, Complex scale)
{
	return expm_hermitian(spectrum(h), scale);
}

/// Normalized thermal state rho = e^{-beta H} / tr e^{-beta H}.
class GibbsState
{
public:
	GibbsState(SpectrumPtr hamiltonian, double beta)
	    : hamiltonian_{checked(std::move(hamiltonian), beta)}, beta_{beta},
	      weights_{detail::boltzmann_weights(*hamiltonian_, beta)}, rho_{density(*hamiltonian_, weights_)}
	{
	}

	[[nodiscard]] const Operator& rho() const { return rho_; }
	[[nodiscard]] double beta() const { return beta_; }
	[[nodiscard]] Eigen::Index dim() const { return rho_.dim(); }
	/// Spectral factorization of the generating Hamiltonian.
	[[nodiscard]] const SpectrumPtr& hamiltonian() const { return hamiltonian_; }
	/// Populations of the Hamiltonian eigenvectors, in ascending-energy order.
	[[nodiscard]] const Eigen::VectorXd& weights() const { return weights_; }

private:
	static SpectrumPtr checked(SpectrumPtr h, double beta)
	{
		if(!h)
		{
			throw Error("Gibbs state needs a Hamiltonian");
		}
		if(!(beta >= 0.0))
		{
			throw NegativeBeta("beta must be >= 0, got " + std::to_string(beta));
		}
		detail::check_exponent(beta * h->spectral_radius(), "gibbs");
		return h;
	}

	static Operator density(const Spectrum& s, const Eigen::VectorXd& weights)
	{
		const Matrix rho = s.vectors * weights.cast<Complex>().asDiagonal() * s.vectors.adjoint();
		// remove the rounding asymmetry of V W V^dagger
		return Operator(0.5 * (rho + rho.adjoint()), true);
	}

	SpectrumPtr hamiltonian_;
	double beta_ = 0.0;
	Eigen::VectorXd weights_;
	Operator rho_;
};

[[nodiscard]] inline GibbsState gibbs(SpectrumPtr hamiltonian, double beta)
{
	return GibbsState(std::move(hamiltonian), beta);
}

[[nodiscard]] inline GibbsState gibbs(const Operator& h, double beta)
{
	if(!(beta >= 0.0))
	{
		throw NegativeBeta("beta must be >= 0, got " + std::to_string(beta));
	}
	return GibbsState(factorize(h), beta);
}

/// omega(A) = tr(rho A)
[[nodiscard]] inline Complex expect(const GibbsState& state, const Operator& a)
{
	Operator::check_same_dim(state.rho(), a);
	// tr(rho A) = sum_ij rho_ij A_ji
	return state.rho().matrix().transpose().cwiseProduct(a.matrix()).sum();
}

/// A(t) = e^{iHt} A e^{-iHt}
[[nodiscard]] inline Operator heisenberg(const Spectrum& s, const Operator& a, double t)
{
	if(a.dim() != s.vectors.rows())
	{
		throw DimensionMismatch("observable and Hamiltonian dims differ");
	}
	const Eigen::VectorXcd phases = (Complex(0.0, t) * s.values.cast<Complex>().array()).exp();
	const Matrix u = s.vectors * phases.asDiagonal() * s.vectors.adjoint();
	const Matrix evolved = u * a.matrix() * u.adjoint();
	if(a.hermitian())
	{
		return Operator(0.5 * (evolved + evolved.adjoint()), true);
	}
	return Operator(evolved);
}

[[nodiscard]] inline Operator heisenberg(const Operator& h, const Operator& a, double t)
{
	Operator::check_same_dim(h, a);
	return heisenberg(spectrum(h), a, t);
}

/// A(i beta) = e^{-beta H} A e^{beta H}, built entrywise in the eigenbasis so the
/// individual factors e^{+-beta lambda} never appear.
[[nodiscard]] inline Operator continue_imag(const Spectrum& s, const Operator& a, double beta)
{
	if(!std::isfinite(beta))
	{
		throw Error("beta must be finite");
	}
	detail::check_exponent(std::abs(beta) * detail::spectral_width(s), "continue_imag");
	Matrix m = detail::to_eigenbasis(s, a);
	for(Eigen::Index l = 0; l < m.cols(); ++l)
	{
		for(Eigen::Index k = 0; k < m.rows(); ++k)
		{
			m(k, l) *= std::exp(-beta * (s.values(k) - s.values(l)));
		}
	}
	return Operator(detail::from_eigenbasis(s, m));
}

[[nodiscard]] inline Operator continue_imag(const Operator& h, const Operator& a, double beta)
{
	Operator::check_same_dim(h, a);
	return continue_imag(spectrum(h), a, beta);
}

/// |omega(AB) - omega(B A(i beta))| with omega the given state and A continued to
/// imaginary time `continuation_beta` under the state's Hamiltonian.
///
/// Both sides are evaluated in the Hamiltonian eigenbasis: the populations stay
/// separate from the continuation factors, so large beta does not amplify the
/// rounding of rho in the product basis.
[[nodiscard]] inline double kms_residual(const GibbsState& state, double continuation_beta, const Operator& a,
                                         const Operator& b)
{
	const Spectrum& s = *state.hamiltonian();
	detail::check_exponent(std::abs(continuation_beta) * detail::spectral_width(s), "kms_residual");
	Operator::check_same_dim(a, b);
	const Matrix at = detail::to_eigenbasis(s, a);
	const Matrix bt = detail::to_eigenbasis(s, b);
	const Eigen::VectorXd& w = state.weights();
	const Eigen::Index dim = at.rows();

	// continued A in the eigenbasis
	Matrix a_imag = at;
	for(Eigen::Index l = 0; l < dim; ++l)
	{
		for(Eigen::Index k = 0; k < dim; ++k)
		{
			a_imag(k, l) *= std::exp(-continuation_beta * (s.values(k) - s.values(l)));
		}
	}

	Complex lhs{};
	Complex rhs{};
	for(Eigen::Index k = 0; k < dim; ++k)
	{
		lhs += w(k) * at.row(k).transpose().cwiseProduct(bt.col(k)).sum();
		rhs += w(k) * bt.row(k).transpose().cwiseProduct(a_imag.col(k)).sum();
	}
	return std::abs(lhs - rhs);
}

[[nodiscard]] inline double kms_residual(const Operator& h, double beta, const Operator& a, const Operator& b)
{
	Operator::check_same_dim(h, a);
	return kms_residual(gibbs(h, beta), beta, a, b);
}

} // namespace spinconsensus
