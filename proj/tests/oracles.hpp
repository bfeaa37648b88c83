#pragma once

// Independent reference computations for the test suites. Nothing here calls the
// library's construction or factorization paths.

#include <spinconsensus/spin_algebra.hpp>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle
{

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// I (x) ... (x) op (x) ... (x) I with Eigen's Kronecker product, site 1 leftmost.
inline Matrix kron_embed(const Matrix& op, int site, int n)
{
	Matrix acc = Matrix::Identity(1, 1);
	for(int k = 1; k <= n; ++k)
	{
		const Matrix factor = (k == site) ? op : Matrix::Identity(2, 2);
		const Matrix next = Eigen::kroneckerProduct(acc, factor).eval();
		acc = next;
	}
	return acc;
}

inline Eigen::VectorXcd kron_vec(const std::vector<Eigen::VectorXcd>& factors)
{
	Eigen::VectorXcd acc = Eigen::VectorXcd::Ones(1);
	for(const auto& f : factors)
	{
		const Eigen::VectorXcd next = Eigen::kroneckerProduct(acc, f).eval();
		acc = next;
	}
	return acc;
}

inline Matrix pauli_literal(int alpha)
{
	Matrix m(2, 2);
	switch(alpha)
	{
	case 1: m << 0, 1, 1, 0; break;
	case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
	case 3: m << 1, 0, 0, -1; break;
	default: m << 1, 0, 0, 1; break;
	}
	return m;
}

inline Matrix plus_literal()
{
	Matrix m(2, 2);
	m << 0, 1, 0, 0;
	return m;
}

inline Matrix minus_literal()
{
	Matrix m(2, 2);
	m << 0, 0, 1, 0;
	return m;
}

/// Mean-field Heisenberg operator by explicit Kronecker products.
inline Matrix meanfield_brute(double J, int n)
{
	const Eigen::Index dim = Eigen::Index{1} << n;
	Matrix h = Matrix::Zero(dim, dim);
	for(int a = 1; a <= 3; ++a)
	{
		for(int i = 1; i <= n; ++i)
		{
			for(int j = 1; j <= n; ++j)
			{
				h += (J / n) * kron_embed(pauli_literal(a), i, n) * kron_embed(pauli_literal(a), j, n);
			}
		}
	}
	return h;
}

/// e^{M} by scaling and squaring with Pade approximants.
inline Matrix expm_pade(const Matrix& m) { return m.exp(); }

/// Random Hermitian matrix with entries of order one.
inline Matrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng)
{
	std::normal_distribution<double> g(0.0, 1.0);
	Matrix a(dim, dim);
	for(Eigen::Index r = 0; r < dim; ++r)
	{
		for(Eigen::Index c = 0; c < dim; ++c)
		{
			a(r, c) = Complex(g(rng), g(rng));
		}
	}
	return 0.5 * (a + a.adjoint());
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Positive root of m + tanh(J m beta) by a dense scan at `step` followed by bisection
/// down to `width`. Returns 0 when no sign change from negative to positive exists.
inline double consensus_root(double J, double beta, double step = 1e-6, double width = 1e-14)
{
	auto f = [&](double m) { return m + std::tanh(J * m * beta); };
	double prev_m = step;
	double prev_f = f(prev_m);
	const auto n_steps = static_cast<std::int64_t>(std::llround(1.0 / step));
	for(std::int64_t k = 2; k <= n_steps; ++k)
	{
		const double m = static_cast<double>(k) * step;
		const double fm = f(m);
		if(prev_f < 0.0 && fm >= 0.0)
		{
			double lo = prev_m;
			double hi = m;
			while(hi - lo > width)
			{
				const double mid = 0.5 * (lo + hi);
				if(mid <= lo || mid >= hi)
				{
					break;
				}
				(f(mid) < 0.0 ? lo : hi) = mid;
			}
			return 0.5 * (lo + hi);
		}
		prev_m = m;
		prev_f = fm;
	}
	return 0.0;
}

} // namespace oracle
