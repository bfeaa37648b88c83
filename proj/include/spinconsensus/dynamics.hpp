#pragma once

#include "bloch.hpp"
#include "hamiltonians.hpp"
#include "spin_algebra.hpp"
#include "thermal_kms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace spinconsensus
{

/// Closed-form mean-field evolution of a single-agent spin component:
///   cos^2(ft) s + (i/f) sin(ft)cos(ft) [f.s, s] + (1/f^2) sin^2(ft) (f.s) s (f.s),
/// the conjugation e^{i (f.s) t} s^alpha e^{-i (f.s) t}. Returns s^alpha when f = 0.
[[nodiscard]] inline Operator evolve_meanfield(const BlochVector& f, Axis alpha, double t)
{
	if(!f.finite() || !std::isfinite(t))
	{
		throw Error("evolve_meanfield needs finite field and time");
	}
	const Matrix2 s = pauli(alpha).matrix();
	const double fn = f.norm();
	if(fn == 0.0)
	{
		return Operator(Matrix(s), true);
	}
	const Matrix2 fs = dot_sigma(f);
	const double c = std::cos(fn * t);
	const double sn = std::sin(fn * t);
	const Matrix2 comm = fs * s - s * fs;
	const Matrix2 out = (c * c) * s + Complex(0.0, sn * c / fn) * comm + (sn * sn / (fn * fn)) * (fs * s * fs);
	return Operator(Matrix(out));
}

/// <u| evolve_meanfield(J u, alpha, t) |u> for the pure agent state with Bloch vector u.
[[nodiscard]] inline double evolve_meanfield_mean(double J, const BlochVector& initial, Axis alpha, double t)
{
	const StateVector psi = agent_state_from_bloch(initial);
	return expectation(psi, evolve_meanfield(J * initial, alpha, t)).real();
}

[[nodiscard]] inline BlochVector evolve_meanfield_bloch(double J, const BlochVector& initial, double t)
{
	const StateVector psi = agent_state_from_bloch(initial);
	const BlochVector f = J * initial;
	std::array<double, 3> out{};
	for(Axis a : kAllAxes)
	{
		out[axis_index(a)] = expectation(psi, evolve_meanfield(f, a, t)).real();
	}
	return {out[0], out[1], out[2]};
}

/// Exact N-agent evolution under h_meanfield(J, N) of a homogeneous product state.
/// Factorizes H_N once; each time point costs two dense matrix-vector products.
class ExactMeanFieldEvolver
{
public:
	ExactMeanFieldEvolver(int n_agents, double J, int cap = kDefaultAgentCap)
	    : n_agents_{n_agents}, J_{J}, spectrum_{spectrum(h_meanfield(J, n_agents, cap))},
	      mean_spin_{mean_spin(Axis::X, n_agents, cap), mean_spin(Axis::Y, n_agents, cap),
	                 mean_spin(Axis::Z, n_agents, cap)}
	{
	}

	[[nodiscard]] int n_agents() const { return n_agents_; }
	[[nodiscard]] double coupling() const { return J_; }

	/// e^{-i H_N t} applied to the product state with every agent at Bloch vector u.
	[[nodiscard]] Vector evolved_state(const BlochVector& initial, double t) const
	{
		const StateVector agent = agent_state_from_bloch(initial);
		const std::vector<StateVector> factors(static_cast<std::size_t>(n_agents_), agent);
		const StateVector phi = product_state(factors);
		const Eigen::VectorXcd phases = (Complex(0.0, -t) * spectrum_.values.cast<Complex>().array()).exp();
		const Vector coeffs = spectrum_.vectors.adjoint() * phi.amplitudes();
		return spectrum_.vectors * phases.cwiseProduct(coeffs);
	}

	/// <sigma_N^alpha(t)> for alpha = 1, 2, 3.
	[[nodiscard]] BlochVector mean(const BlochVector& initial, double t) const
	{
		const Vector psi = evolved_state(initial, t);
		std::array<double, 3> out{};
		for(std::size_t a = 0; a < 3; ++a)
		{
			out[a] = psi.dot(mean_spin_[a] * psi).real();
		}
		return {out[0], out[1], out[2]};
	}

	[[nodiscard]] double mean(const BlochVector& initial, Axis alpha, double t) const
	{
		const Vector psi = evolved_state(initial, t);
		return psi.dot(mean_spin_[static_cast<std::size_t>(axis_index(alpha))] * psi).real();
	}

private:
	int n_agents_;
	double J_;
	Spectrum spectrum_;
	std::array<Operator, 3> mean_spin_;
};

/// <Phi_u, e^{i H_N t} sigma_N^alpha e^{-i H_N t} Phi_u>
[[nodiscard]] inline double evolve_exact_mean(int n_agents, double J, const BlochVector& initial, Axis alpha,
                                              double t, int cap = kDefaultAgentCap)
{
	check_agent_count(n_agents, cap);
	// validate before the (possibly large) factorization
	(void)agent_state_from_bloch(initial);
	return ExactMeanFieldEvolver(n_agents, J, cap).mean(initial, alpha, t);
}

/// Exact and mean-field mean-spin trajectories for one N.
struct TrajectoryRecord
{
	std::vector<double> times;
	std::vector<BlochVector> exact_mean;
	std::vector<BlochVector> meanfield_mean;
	int n_agents = 0;
	double J = 0.0;
	BlochVector initial;

	/// max over t and alpha of |exact - meanfield|
	[[nodiscard]] double max_deviation() const
	{
		double dev = 0.0;
		for(std::size_t k = 0; k < times.size(); ++k)
		{
			for(Axis a : kAllAxes)
			{
				dev = std::max(dev, std::abs(exact_mean[k][a] - meanfield_mean[k][a]));
			}
		}
		return dev;
	}
};

[[nodiscard]] inline TrajectoryRecord trajectory(int n_agents, double J, const BlochVector& initial,
                                                 std::span<const double> times, int cap = kDefaultAgentCap)
{
	check_agent_count(n_agents, cap);
	(void)agent_state_from_bloch(initial);
	const ExactMeanFieldEvolver exact(n_agents, J, cap);
	TrajectoryRecord rec;
	rec.n_agents = n_agents;
	rec.J = J;
	rec.initial = initial;
	rec.times.assign(times.begin(), times.end());
	rec.exact_mean.reserve(times.size());
	rec.meanfield_mean.reserve(times.size());
	for(const double t : times)
	{
		rec.exact_mean.push_back(exact.mean(initial, t));
		rec.meanfield_mean.push_back(evolve_meanfield_bloch(J, initial, t));
	}
	return rec;
}

/// One TrajectoryRecord per N, in the order of `agent_counts`.
[[nodiscard]] inline std::vector<TrajectoryRecord> compare_trajectories(std::span<const int> agent_counts, double J,
                                                                        const BlochVector& initial,
                                                                        std::span<const double> times,
                                                                        int cap = kDefaultAgentCap)
{
	std::vector<TrajectoryRecord> out;
	out.reserve(agent_counts.size());
	for(const int n : agent_counts)
	{
		out.push_back(trajectory(n, J, initial, times, cap));
	}
	return out;
}

} // namespace spinconsensus
