#pragma once

#include "errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>

namespace spinconsensus
{

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

/// Largest number of agents for which dense 2^N operators are built.
inline constexpr int kDefaultAgentCap = 12;

/// Entrywise tolerance for the Hermiticity flag, relative to max(1, max|M|).
inline constexpr double kHermitianTolerance = 1e-12;
/// Norm tolerance accepted for user-supplied amplitudes.
inline constexpr double kInputNormTolerance = 1e-9;
/// Norm tolerance every StateVector satisfies.
inline constexpr double kStateNormTolerance = 1e-12;

enum class PauliKind
{
	X,
	Y,
	Z,
	Plus,
	Minus,
	Id
};

/// Spin axis alpha in {1, 2, 3}.
enum class Axis : int
{
	X = 1,
	Y = 2,
	Z = 3
};

inline constexpr Axis kAllAxes[] = {Axis::X, Axis::Y, Axis::Z};

[[nodiscard]] inline int axis_index(Axis a) { return static_cast<int>(a) - 1; }

[[nodiscard]] inline Axis axis_from_int(int alpha)
{
	if(alpha < 1 || alpha > 3)
	{
		throw Error("axis must be 1, 2 or 3, got " + std::to_string(alpha));
	}
	return static_cast<Axis>(alpha);
}

[[nodiscard]] inline PauliKind pauli_kind(Axis a)
{
	switch(a)
	{
	case Axis::X: return PauliKind::X;
	case Axis::Y: return PauliKind::Y;
	case Axis::Z: return PauliKind::Z;
	}
	return PauliKind::Id;
}

[[nodiscard]] inline double max_abs_entry(const Matrix& m)
{
	return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

[[nodiscard]] inline double hermiticity_error(const Matrix& m)
{
	return max_abs_entry(m - m.adjoint());
}

/// Dense square complex matrix on the agents' Hilbert space.
///
/// The Hermiticity flag is either detected from the entries or asserted by the
/// caller; an asserted flag that the entries contradict raises NotHermitian.
class Operator
{
public:
	explicit Operator(Matrix m) : mat_{std::move(m)}
	{
		check_square();
		hermitian_ = hermitian_within_tolerance();
	}

	Operator(Matrix m, bool hermitian) : mat_{std::move(m)}, hermitian_{hermitian}
	{
		check_square();
		if(hermitian_ && !hermitian_within_tolerance())
		{
			throw NotHermitian("operator flagged Hermitian but max|M - M^dagger| = " +
			                   std::to_string(hermiticity_error(mat_)));
		}
	}

	[[nodiscard]] static Operator identity(Eigen::Index dim)
	{
		return Operator(Matrix::Identity(dim, dim), true);
	}

	[[nodiscard]] static Operator zero(Eigen::Index dim)
	{
		return Operator(Matrix::Zero(dim, dim), true);
	}

	[[nodiscard]] Eigen::Index dim() const { return mat_.rows(); }
	[[nodiscard]] const Matrix& matrix() const& { return mat_; }
	[[nodiscard]] Matrix matrix() && { return std::move(mat_); }
	[[nodiscard]] bool hermitian() const { return hermitian_; }
	[[nodiscard]] Complex operator()(Eigen::Index r, Eigen::Index c) const { return mat_(r, c); }

	[[nodiscard]] Operator adjoint() const { return Operator(mat_.adjoint(), hermitian_); }

	[[nodiscard]] Complex trace() const { return mat_.trace(); }

	friend Operator operator+(const Operator& a, const Operator& b)
	{
		check_same_dim(a, b);
		return Operator(a.mat_ + b.mat_);
	}

	friend Operator operator-(const Operator& a, const Operator& b)
	{
		check_same_dim(a, b);
		return Operator(a.mat_ - b.mat_);
	}

	friend Operator operator*(const Operator& a, const Operator& b)
	{
		check_same_dim(a, b);
		return Operator(a.mat_ * b.mat_);
	}

	friend Operator operator*(Complex s, const Operator& a) { return Operator(s * a.mat_); }
	friend Operator operator*(double s, const Operator& a)
	{
		return Operator(s * a.mat_, a.hermitian_);
	}

	friend Vector operator*(const Operator& a, const Vector& v)
	{
		if(v.size() != a.dim())
		{
			throw DimensionMismatch("operator of dim " + std::to_string(a.dim()) +
			                        " applied to vector of dim " + std::to_string(v.size()));
		}
		return a.mat_ * v;
	}

	static void check_same_dim(const Operator& a, const Operator& b)
	{
		if(a.dim() != b.dim())
		{
			throw DimensionMismatch("operator dims differ: " + std::to_string(a.dim()) + " vs " +
			                        std::to_string(b.dim()));
		}
	}

private:
	void check_square() const
	{
		if(mat_.rows() < 1 || mat_.rows() != mat_.cols())
		{
			throw DimensionMismatch("operator must be a non-empty square matrix");
		}
	}

	[[nodiscard]] bool hermitian_within_tolerance() const
	{
		return hermiticity_error(mat_) <= kHermitianTolerance * std::max(1.0, max_abs_entry(mat_));
	}

	Matrix mat_;
	bool hermitian_ = false;
};

/// Largest entrywise modulus of a - b.
[[nodiscard]] inline double max_abs_diff(const Operator& a, const Operator& b)
{
	Operator::check_same_dim(a, b);
	return max_abs_entry(a.matrix() - b.matrix());
}

/// Unit-norm complex vector.
class StateVector
{
public:
	explicit StateVector(Vector amplitudes) : amp_{std::move(amplitudes)}
	{
		if(amp_.size() < 1)
		{
			throw DimensionMismatch("state vector must be non-empty");
		}
		if(std::abs(amp_.norm() - 1.0) > kStateNormTolerance)
		{
			throw NormalizationError("state vector norm " + std::to_string(amp_.norm()) + " != 1");
		}
	}

	[[nodiscard]] Eigen::Index dim() const { return amp_.size(); }
	[[nodiscard]] const Vector& amplitudes() const { return amp_; }
	[[nodiscard]] Complex operator[](Eigen::Index i) const { return amp_[i]; }

private:
	Vector amp_;
};

/// <psi, A psi>
[[nodiscard]] inline Complex expectation(const StateVector& psi, const Operator& a)
{
	return psi.amplitudes().dot(a * psi.amplitudes());
}

/// The six single-agent matrices in the (e+, e-) basis, e+ = (1, 0).
[[nodiscard]] inline Operator pauli(PauliKind kind)
{
	using namespace std::complex_literals;
	Matrix2 m;
	switch(kind)
	{
	case PauliKind::X: m << 0.0, 1.0, 1.0, 0.0; break;
	case PauliKind::Y: m << 0.0, -1i, 1i, 0.0; break;
	case PauliKind::Z: m << 1.0, 0.0, 0.0, -1.0; break;
	case PauliKind::Plus: m << 0.0, 1.0, 0.0, 0.0; break;
	case PauliKind::Minus: m << 0.0, 0.0, 1.0, 0.0; break;
	case PauliKind::Id: m << 1.0, 0.0, 0.0, 1.0; break;
	}
	const bool hermitian = kind != PauliKind::Plus && kind != PauliKind::Minus;
	return Operator(Matrix(m), hermitian);
}

[[nodiscard]] inline Operator pauli(Axis a) { return pauli(pauli_kind(a)); }

/// psi = a e+ + b e-. Inputs within 1e-9 of unit norm are renormalized.
[[nodiscard]] inline StateVector agent_state(Complex a, Complex b)
{
	const double norm2 = std::norm(a) + std::norm(b);
	if(std::abs(norm2 - 1.0) > kInputNormTolerance)
	{
		throw NormalizationError("|a|^2 + |b|^2 = " + std::to_string(norm2) + ", expected 1");
	}
	const double scale = 1.0 / std::sqrt(norm2);
	Vector v(2);
	v << a * scale, b * scale;
	return StateVector(std::move(v));
}

[[nodiscard]] inline StateVector spin_up() { return agent_state(1.0, 0.0); }
[[nodiscard]] inline StateVector spin_down() { return agent_state(0.0, 1.0); }

inline void check_agent_count(int n_agents, int cap = kDefaultAgentCap)
{
	if(n_agents < 1)
	{
		throw SiteOutOfRange("number of agents must be >= 1, got " + std::to_string(n_agents));
	}
	if(n_agents > cap)
	{
		throw DimensionCapExceeded(std::to_string(n_agents) + " agents exceeds cap of " +
		                           std::to_string(cap));
	}
}

[[nodiscard]] inline Eigen::Index hilbert_dim(int n_agents) { return Eigen::Index{1} << n_agents; }

namespace detail
{

// Site 1 is the most significant tensor factor; bit value 0 is e+.
[[nodiscard]] inline int site_shift(int site, int n_agents) { return n_agents - site; }

[[nodiscard]] inline int site_bit(Eigen::Index basis, int site, int n_agents)
{
	return static_cast<int>((basis >> site_shift(site, n_agents)) & 1);
}

[[nodiscard]] inline Eigen::Index with_site_bit(Eigen::Index basis, int site, int n_agents, int bit)
{
	const int s = site_shift(site, n_agents);
	return (basis & ~(Eigen::Index{1} << s)) | (Eigen::Index{bit} << s);
}

[[nodiscard]] inline Matrix2 as_2x2(const Operator& op)
{
	if(op.dim() != 2)
	{
		throw DimensionMismatch("single-agent operator must be 2x2, got dim " + std::to_string(op.dim()));
	}
	return op.matrix();
}

/// out += coeff * (a at site i)(b at site j); i == j multiplies on the shared site.
inline void accumulate_two_site(Matrix& out, Complex coeff, const Matrix2& a, int i, const Matrix2& b,
                                int j, int n_agents)
{
	const Eigen::Index dim = out.rows();
	if(i == j)
	{
		const Matrix2 ab = a * b;
		for(Eigen::Index col = 0; col < dim; ++col)
		{
			const int c = site_bit(col, i, n_agents);
			for(int r = 0; r < 2; ++r)
			{
				const Complex v = ab(r, c);
				if(v != Complex{})
				{
					out(with_site_bit(col, i, n_agents, r), col) += coeff * v;
				}
			}
		}
		return;
	}
	for(Eigen::Index col = 0; col < dim; ++col)
	{
		const int ci = site_bit(col, i, n_agents);
		const int cj = site_bit(col, j, n_agents);
		for(int ri = 0; ri < 2; ++ri)
		{
			const Complex va = a(ri, ci);
			if(va == Complex{})
			{
				continue;
			}
			for(int rj = 0; rj < 2; ++rj)
			{
				const Complex vb = b(rj, cj);
				if(vb == Complex{})
				{
					continue;
				}
				const Eigen::Index row = with_site_bit(with_site_bit(col, i, n_agents, ri), j, n_agents, rj);
				out(row, col) += coeff * va * vb;
			}
		}
	}
}

/// out += coeff * (a at site i).
inline void accumulate_one_site(Matrix& out, Complex coeff, const Matrix2& a, int i, int n_agents)
{
	const Eigen::Index dim = out.rows();
	for(Eigen::Index col = 0; col < dim; ++col)
	{
		const int c = site_bit(col, i, n_agents);
		for(int r = 0; r < 2; ++r)
		{
			const Complex v = a(r, c);
			if(v != Complex{})
			{
				out(with_site_bit(col, i, n_agents, r), col) += coeff * v;
			}
		}
	}
}

} // namespace detail

/// op acting on agent `site` (1-based) and identity on every other agent.
[[nodiscard]] inline Operator embed(const Operator& op, int site, int n_agents, int cap = kDefaultAgentCap)
{
	const Matrix2 local = detail::as_2x2(op);
	check_agent_count(n_agents, cap);
	if(site < 1 || site > n_agents)
	{
		throw SiteOutOfRange("site " + std::to_string(site) + " outside 1.." + std::to_string(n_agents));
	}
	const Eigen::Index dim = hilbert_dim(n_agents);
	Matrix out = Matrix::Zero(dim, dim);
	detail::accumulate_one_site(out, 1.0, local, site, n_agents);
	return Operator(std::move(out), op.hermitian());
}

/// Kronecker product of single-agent states, first factor most significant.
[[nodiscard]] inline StateVector product_state(std::span<const StateVector> factors)
{
	if(factors.empty())
	{
		throw EmptyFactorList("product_state needs at least one factor");
	}
	Vector acc = Vector::Ones(1);
	for(const auto& f : factors)
	{
		Vector next(acc.size() * f.dim());
		for(Eigen::Index k = 0; k < acc.size(); ++k)
		{
			next.segment(k * f.dim(), f.dim()) = acc[k] * f.amplitudes();
		}
		acc = std::move(next);
	}
	// renormalize away the accumulated rounding of many factors
	acc /= acc.norm();
	return StateVector(std::move(acc));
}

[[nodiscard]] inline StateVector product_state(std::initializer_list<StateVector> factors)
{
	return product_state(std::span<const StateVector>(factors.begin(), factors.size()));
}

[[nodiscard]] inline Operator commutator(const Operator& a, const Operator& b)
{
	Operator::check_same_dim(a, b);
	return Operator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

[[nodiscard]] inline Operator anticommutator(const Operator& a, const Operator& b)
{
	Operator::check_same_dim(a, b);
	return Operator(a.matrix() * b.matrix() + b.matrix() * a.matrix());
}

/// sum_i sigma_i^alpha over all agents.
[[nodiscard]] inline Operator total_spin(Axis alpha, int n_agents, int cap = kDefaultAgentCap)
{
	check_agent_count(n_agents, cap);
	const Matrix2 local = pauli(alpha).matrix();
	const Eigen::Index dim = hilbert_dim(n_agents);
	Matrix out = Matrix::Zero(dim, dim);
	for(int i = 1; i <= n_agents; ++i)
	{
		detail::accumulate_one_site(out, 1.0, local, i, n_agents);
	}
	return Operator(std::move(out), true);
}

/// (1/N) sum_i sigma_i^alpha.
[[nodiscard]] inline Operator mean_spin(Axis alpha, int n_agents, int cap = kDefaultAgentCap)
{
	return (1.0 / n_agents) * total_spin(alpha, n_agents, cap);
}

} // namespace spinconsensus
