#pragma once

#include "bloch.hpp"
#include "spin_algebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace spinconsensus
{

/// Real N x N pair potential (J_ij or p_ij). Not symmetrized.
class CouplingMatrix
{
public:
	explicit CouplingMatrix(Eigen::MatrixXd values) : values_{std::move(values)}
	{
		if(values_.rows() < 1 || values_.rows() != values_.cols())
		{
			throw DimensionMismatch("coupling matrix must be square and non-empty");
		}
		if(!values_.allFinite())
		{
			throw Error("coupling matrix has non-finite entries");
		}
	}

	[[nodiscard]] static CouplingMatrix uniform(int n, double value)
	{
		return CouplingMatrix(Eigen::MatrixXd::Constant(n, n, value));
	}

	[[nodiscard]] static CouplingMatrix zero(int n) { return uniform(n, 0.0); }

	[[nodiscard]] int size() const { return static_cast<int>(values_.rows()); }
	[[nodiscard]] double operator()(int i, int j) const { return values_(i, j); }
	[[nodiscard]] const Eigen::MatrixXd& values() const { return values_; }
	[[nodiscard]] bool symmetric() const { return values_ == values_.transpose(); }

private:
	Eigen::MatrixXd values_;
};

/// Uniform mean-field couplings J, p and external field B.
struct MeanFieldCoupling
{
	double J = 0.0;
	double p = 0.0;
	double B = 0.0;

	/// The reduction that turns h_N into H_N requires p = 2J.
	[[nodiscard]] static MeanFieldCoupling heisenberg(double J, double B = 0.0) { return {J, 2.0 * J, B}; }

	void check_reduction() const
	{
		if(!std::isfinite(J) || !std::isfinite(p) || !std::isfinite(B))
		{
			throw Error("mean-field couplings must be finite");
		}
		if(p != 2.0 * J)
		{
			throw Error("mean-field reduction requires p = 2J, got p = " + std::to_string(p) +
			            ", J = " + std::to_string(J));
		}
	}

	/// J_ij = J/N and p_ij = p/N for every ordered pair.
	[[nodiscard]] std::pair<CouplingMatrix, CouplingMatrix> pair_couplings(int n) const
	{
		return {CouplingMatrix::uniform(n, J / n), CouplingMatrix::uniform(n, p / n)};
	}
};

namespace detail
{

inline void check_couplings(const CouplingMatrix& c, int n_agents)
{
	if(c.size() != n_agents)
	{
		throw DimensionMismatch("coupling matrix is " + std::to_string(c.size()) + "x" +
		                        std::to_string(c.size()) + " but N = " + std::to_string(n_agents));
	}
}

[[nodiscard]] inline Matrix zero_matrix(int n_agents)
{
	const Eigen::Index dim = hilbert_dim(n_agents);
	return Matrix::Zero(dim, dim);
}

} // namespace detail

/// Cooperative term: sum over all ordered pairs (i, j), i == j included, of J_ij s3_i s3_j.
[[nodiscard]] inline Operator h_coop(const CouplingMatrix& couplings, int n_agents,
                                     int cap = kDefaultAgentCap)
{
	check_agent_count(n_agents, cap);
	detail::check_couplings(couplings, n_agents);
	// diagonal in the product basis
	const Eigen::Index dim = hilbert_dim(n_agents);
	Matrix out = Matrix::Zero(dim, dim);
	for(Eigen::Index b = 0; b < dim; ++b)
	{
		double energy = 0.0;
		for(int i = 1; i <= n_agents; ++i)
		{
			const double si = detail::site_bit(b, i, n_agents) == 0 ? 1.0 : -1.0;
			for(int j = 1; j <= n_agents; ++j)
			{
				const double sj = detail::site_bit(b, j, n_agents) == 0 ? 1.0 : -1.0;
				energy += couplings(i - 1, j - 1) * si * sj;
			}
		}
		out(b, b) = energy;
	}
	return Operator(std::move(out), true);
}

/// Opposition term: sum over all ordered pairs of p_ij (s+_i s-_j + s-_i s+_j).
/// Hermitian (and asserted so) when p is symmetric.
[[nodiscard]] inline Operator h_opp(const CouplingMatrix& couplings, int n_agents,
                                    int cap = kDefaultAgentCap)
{
	check_agent_count(n_agents, cap);
	detail::check_couplings(couplings, n_agents);
	const Matrix2 plus = pauli(PauliKind::Plus).matrix();
	const Matrix2 minus = pauli(PauliKind::Minus).matrix();
	Matrix out = detail::zero_matrix(n_agents);
	for(int i = 1; i <= n_agents; ++i)
	{
		for(int j = 1; j <= n_agents; ++j)
		{
			const double p = couplings(i - 1, j - 1);
			if(p == 0.0)
			{
				continue;
			}
			detail::accumulate_two_site(out, p, plus, i, minus, j, n_agents);
			detail::accumulate_two_site(out, p, minus, i, plus, j, n_agents);
		}
	}
	if(couplings.symmetric())
	{
		return Operator(std::move(out), true);
	}
	return Operator(std::move(out));
}

/// h_N = H_coop + H_opp.
[[nodiscard]] inline Operator h_total(const CouplingMatrix& coop, const CouplingMatrix& opp, int n_agents,
                                      int cap = kDefaultAgentCap)
{
	return h_coop(coop, n_agents, cap) + h_opp(opp, n_agents, cap);
}

/// External field B sum_i s3_i.
[[nodiscard]] inline Operator h_ext(double field, int n_agents, int cap = kDefaultAgentCap)
{
	if(!std::isfinite(field))
	{
		throw Error("external field must be finite");
	}
	return field * total_spin(Axis::Z, n_agents, cap);
}

/// Mean-field Heisenberg operator (J/N) sum_{i,j} sum_alpha s^alpha_i s^alpha_j.
[[nodiscard]] inline Operator h_meanfield(double J, int n_agents, int cap = kDefaultAgentCap)
{
	check_agent_count(n_agents, cap);
	Matrix out = detail::zero_matrix(n_agents);
	const double scale = J / n_agents;
	for(Axis a : kAllAxes)
	{
		const Matrix2 s = pauli(a).matrix();
		for(int i = 1; i <= n_agents; ++i)
		{
			for(int j = 1; j <= n_agents; ++j)
			{
				detail::accumulate_two_site(out, scale, s, i, s, j, n_agents);
			}
		}
	}
	return Operator(std::move(out), true);
}

/// Effective single-body Hamiltonian f . sum_i sigma_i.
[[nodiscard]] inline Operator h_pi(const BlochVector& f, int n_agents, int cap = kDefaultAgentCap)
{
	if(!f.finite())
	{
		throw Error("effective field must be finite");
	}
	check_agent_count(n_agents, cap);
	const Matrix2 local = dot_sigma(f);
	Matrix out = detail::zero_matrix(n_agents);
	for(int i = 1; i <= n_agents; ++i)
	{
		detail::accumulate_one_site(out, 1.0, local, i, n_agents);
	}
	return Operator(std::move(out), true);
}

/// Ascending eigenvalues with orthonormal eigenvectors (columns).
struct Spectrum
{
	Eigen::VectorXd values;
	Matrix vectors;

	[[nodiscard]] double spectral_radius() const
	{
		return values.size() == 0 ? 0.0 : std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
	}

	[[nodiscard]] Matrix reconstruct() const
	{
		return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
	}
};

[[nodiscard]] inline Spectrum spectrum(const Operator& h)
{
	if(!h.hermitian())
	{
		throw NotHermitian("spectrum requires a Hermitian operator");
	}
	const Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
	if(es.info() != Eigen::Success)
	{
		throw Error("Hermitian eigendecomposition failed");
	}
	return {es.eigenvalues(), es.eigenvectors()};
}

} // namespace spinconsensus
