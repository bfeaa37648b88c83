#pragma once

#include "bloch.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace spinconsensus
{

/// One solved point of the self-consistency equation tanh(J m beta) = -m.
struct MeanFieldPoint
{
	double J = 0.0;
	double beta = 0.0;
	double m_c = 0.0;
	bool converged = false;
	double residual = 0.0;
	int iterations = 0;

	[[nodiscard]] double temperature() const { return 1.0 / beta; }
};

struct SolverOptions
{
	double tolerance = 1e-12;
	/// Lower end of the root bracket; excludes the trivial root m = 0.
	double bracket_low = 1e-12;
	int max_iterations = 10000;
	int newton_steps = 8;
};

/// Phi(m) = m + tanh(J m beta); its positive roots solve the self-consistency equation.
[[nodiscard]] inline double phi(double m, double J, double beta) { return m + std::tanh(J * m * beta); }

/// Phi'(m) = 1 + J beta / cosh^2(J beta m)
[[nodiscard]] inline double phi_prime(double m, double J, double beta)
{
	const double c = std::cosh(J * beta * m);
	return 1.0 + J * beta / (c * c);
}

/// Left-hand side of the KMS condition for A = B = sigma^1:
///   sinh(x) (m2^2 + m3^2) [cosh(x)/m + sinh(x)/m^2],  x = J m beta.
/// Written as (m2^2 + m3^2) J beta s(x) [cosh(x) + J beta s(x)] with s(x) = sinh(x)/x,
/// which removes the 1/m singularity; s(x) uses its series below |x| = 1e-4.
[[nodiscard]] inline double eq38_lhs(const BlochVector& mvec, double J, double beta)
{
	const double transverse = mvec.m2 * mvec.m2 + mvec.m3 * mvec.m3;
	if(transverse == 0.0)
	{
		return 0.0;
	}
	const double m = mvec.norm();
	const double jb = J * beta;
	const double x = jb * m;
	double sinhc = 0.0;
	double cosh_x = 0.0;
	if(std::abs(x) < 1e-4)
	{
		sinhc = 1.0 + x * x / 6.0;
		cosh_x = 1.0 + x * x / 2.0;
	}
	else
	{
		sinhc = std::sinh(x) / x;
		cosh_x = std::cosh(x);
	}
	return transverse * jb * sinhc * (cosh_x + jb * sinhc);
}

/// Consensus parameter m_c(J, beta): 0 when J beta >= -1, otherwise the root in (0, 1)
/// found by bisection on [bracket_low, 1] and polished with Newton steps.
[[nodiscard]] inline MeanFieldPoint solve_m(double J, double beta, const SolverOptions& opts = {})
{
	if(!(beta > 0.0) || !std::isfinite(beta))
	{
		throw NonPositiveBeta("beta must be positive and finite, got " + std::to_string(beta));
	}
	if(!(opts.tolerance > 0.0))
	{
		throw NonPositiveTolerance("tolerance must be positive, got " + std::to_string(opts.tolerance));
	}
	if(!std::isfinite(J))
	{
		throw Error("J must be finite");
	}

	MeanFieldPoint point{J, beta, 0.0, true, 0.0, 0};
	if(J * beta >= -1.0)
	{
		return point;
	}

	double lo = opts.bracket_low;
	double hi = 1.0;
	double f_lo = phi(lo, J, beta);
	const double f_hi = phi(hi, J, beta);
	// phi(1) rounds to exactly 0 once the root is within an ulp of 1
	if(!(f_lo < 0.0 && f_hi >= 0.0))
	{
		point.converged = false;
		point.residual = std::abs(f_lo);
		return point;
	}

	int iterations = 0;
	while(hi - lo >= opts.tolerance && iterations < opts.max_iterations)
	{
		const double mid = 0.5 * (lo + hi);
		if(mid <= lo || mid >= hi)
		{
			break;
		}
		const double f_mid = phi(mid, J, beta);
		if(f_mid < 0.0)
		{
			lo = mid;
			f_lo = f_mid;
		}
		else
		{
			hi = mid;
		}
		++iterations;
	}

	double m = 0.5 * (lo + hi);
	for(int k = 0; k < opts.newton_steps; ++k)
	{
		const double d = phi_prime(m, J, beta);
		if(d <= 0.0)
		{
			break;
		}
		const double next = m - phi(m, J, beta) / d;
		// Newton must stay inside the bisection bracket
		if(!(next > lo - opts.tolerance && next < hi + opts.tolerance))
		{
			break;
		}
		const bool settled = next == m;
		m = next;
		++iterations;
		if(settled)
		{
			break;
		}
	}

	// the root is strictly below 1; keep the representable neighbour
	m = std::min(m, std::nextafter(1.0, 0.0));
	point.m_c = m;
	point.iterations = iterations;
	point.residual = std::abs(phi(m, J, beta));
	point.converged = point.residual <= opts.tolerance && m > 0.0 && m < 1.0;
	return point;
}

/// T_c = -J; there is no transition for J >= 0.
[[nodiscard]] inline double critical_temperature(double J)
{
	if(!(J < 0.0))
	{
		throw NonNegativeCoupling("critical temperature requires J < 0, got " + std::to_string(J));
	}
	return -J;
}

/// solve_m at beta = 1/T for each T, in grid order.
[[nodiscard]] inline std::vector<MeanFieldPoint> phase_curve(double J, std::span<const double> temperatures,
                                                             const SolverOptions& opts = {})
{
	if(!(J < 0.0))
	{
		throw NonNegativeCoupling("phase curve requires J < 0, got " + std::to_string(J));
	}
	std::vector<MeanFieldPoint> out;
	out.reserve(temperatures.size());
	for(const double t : temperatures)
	{
		if(!(t > 0.0) || !std::isfinite(t))
		{
			throw NonPositiveBeta("temperatures must be positive, got " + std::to_string(t));
		}
		out.push_back(solve_m(J, 1.0 / t, opts));
	}
	return out;
}

} // namespace spinconsensus
