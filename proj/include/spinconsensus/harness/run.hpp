#pragma once

#include "../dynamics.hpp"
#include "../hamiltonians.hpp"
#include "../mean_field.hpp"
#include "../spin_algebra.hpp"
#include "../thermal_kms.hpp"
#include "config.hpp"
#include "output.hpp"
#include "parallel.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace spinconsensus::harness
{

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int
{
	kExitOk = 0,
	kExitFailure = 1,
	kExitInvalidConfig = 2,
	kExitNonConvergence = 3
};

struct RunResult
{
	SweepConfig config;
	Table table;
	/// Deterministic summary persisted with JSON output.
	nlohmann::ordered_json meta;
	/// Human-readable lines for stdout.
	std::vector<std::string> summary;
	double wall_seconds = 0.0;
	std::string version = kVersion;
	bool numerical_failure = false;

	[[nodiscard]] int exit_code() const { return numerical_failure ? kExitNonConvergence : kExitOk; }
};

[[nodiscard]] inline nlohmann::ordered_json config_to_json(const SweepConfig& c)
{
	nlohmann::ordered_json j;
	j["command"] = to_string(c.command);
	switch(c.command)
	{
	case Command::SolveM:
		j["J"] = *c.J;
		j["beta"] = c.betas;
		j["tol"] = c.tolerance;
		break;
	case Command::PhaseDiagram:
		j["J"] = *c.J;
		j["t_min"] = *c.t_min;
		j["t_max"] = *c.t_max;
		j["steps"] = *c.steps;
		j["tol"] = c.tolerance;
		break;
	case Command::KmsCheck:
		j["n"] = c.n_agents;
		j["beta"] = c.betas;
		j["hamiltonian"] = to_string(c.hamiltonian);
		j["J"] = c.J.value_or(-1.0);
		j["field"] = c.field;
		j["exhaustive"] = c.exhaustive;
		j["samples"] = c.samples;
		j["kms_threshold"] = c.kms_threshold;
		break;
	case Command::Evolve:
		j["J"] = *c.J;
		j["n_list"] = c.n_list.empty() ? std::vector<int>{c.n_agents} : c.n_list;
		j["u"] = {c.initial.m1, c.initial.m2, c.initial.m3};
		j["time_max"] = c.time_max;
		j["time_steps"] = c.time_steps;
		break;
	case Command::AlgebraCheck: j["n"] = c.n_agents; break;
	}
	j["seed"] = c.seed;
	j["n_cap"] = c.n_cap;
	j["format"] = to_string(c.format);
	return j;
}

/// Evenly spaced grid of `steps` points from lo to hi inclusive.
[[nodiscard]] inline std::vector<double> linear_grid(double lo, double hi, int steps)
{
	std::vector<double> out;
	out.reserve(static_cast<std::size_t>(steps));
	if(steps == 1)
	{
		out.push_back(lo);
		return out;
	}
	for(int k = 0; k < steps; ++k)
	{
		out.push_back(k == steps - 1 ? hi : lo + (hi - lo) * k / (steps - 1));
	}
	return out;
}

namespace detail
{

/// Portable uniform draws from mt19937_64 (the std distributions are implementation-defined).
class SeededRng
{
public:
	explicit SeededRng(std::uint64_t seed) : engine_{seed} {}

	[[nodiscard]] double uniform(double lo, double hi)
	{
		const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
		return lo + (hi - lo) * u;
	}

	[[nodiscard]] std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
	std::mt19937_64 engine_;
};

/// Symmetric random coupling matrix with entries uniform in [-1, 1].
[[nodiscard]] inline CouplingMatrix random_symmetric_couplings(int n, SeededRng& rng)
{
	Eigen::MatrixXd m(n, n);
	for(int i = 0; i < n; ++i)
	{
		for(int j = i; j < n; ++j)
		{
			m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
		}
	}
	return CouplingMatrix(std::move(m));
}

struct SiteObservable
{
	int site;
	Axis axis;
};

inline RunResult run_solve_m(const SweepConfig& cfg)
{
	RunResult res;
	res.table.columns = {"J", "beta", "m_c", "converged", "residual", "iterations"};
	const double J = *cfg.J;
	const SolverOptions opts{.tolerance = cfg.tolerance};
	const auto points = parallel_map(cfg.betas.size(), cfg.threads,
	                                 [&](std::size_t k) { return solve_m(J, cfg.betas[k], opts); });
	for(const auto& p : points)
	{
		res.table.rows.push_back({p.J, p.beta, p.m_c, p.converged, p.residual, std::int64_t{p.iterations}});
		res.summary.push_back("J=" + format_double(p.J) + " beta=" + format_double(p.beta) +
		                      " m_c=" + format_double(p.m_c) + (p.converged ? "" : " (not converged)"));
		res.numerical_failure = res.numerical_failure || !p.converged;
	}
	return res;
}

inline RunResult run_phase_diagram(const SweepConfig& cfg)
{
	RunResult res;
	res.table.columns = {"T", "beta", "m_c", "converged", "residual"};
	const double J = *cfg.J;
	const auto temps = linear_grid(*cfg.t_min, *cfg.t_max, *cfg.steps);
	const SolverOptions opts{.tolerance = cfg.tolerance};
	const auto points = parallel_map(temps.size(), cfg.threads,
	                                 [&](std::size_t k) { return solve_m(J, 1.0 / temps[k], opts); });
	std::optional<double> last_ordered;
	std::optional<double> first_disordered;
	for(std::size_t k = 0; k < temps.size(); ++k)
	{
		const auto& p = points[k];
		res.table.rows.push_back({temps[k], p.beta, p.m_c, p.converged, p.residual});
		res.numerical_failure = res.numerical_failure || !p.converged;
		if(p.m_c > 0.0)
		{
			last_ordered = temps[k];
		}
		else if(!first_disordered)
		{
			first_disordered = temps[k];
		}
	}
	res.meta["T_c"] = critical_temperature(J);
	res.meta["last_ordered_T"] = last_ordered ? nlohmann::ordered_json(*last_ordered) : nullptr;
	res.meta["first_disordered_T"] = first_disordered ? nlohmann::ordered_json(*first_disordered) : nullptr;
	res.summary.push_back(std::to_string(temps.size()) + " points, T_c=" + format_double(-J));
	return res;
}

inline RunResult run_kms_check(const SweepConfig& cfg)
{
	RunResult res;
	res.table.columns = {"n", "beta", "hamiltonian", "site_a", "axis_a", "site_b", "axis_b", "residual", "passed"};
	const int n = cfg.n_agents;
	SeededRng rng(cfg.seed);

	Operator h = [&] {
		switch(cfg.hamiltonian)
		{
		case HamiltonianKind::MeanField: return h_meanfield(cfg.J.value_or(-1.0), n, cfg.n_cap);
		case HamiltonianKind::Total:
		{
			const CouplingMatrix coop = random_symmetric_couplings(n, rng);
			const CouplingMatrix opp = random_symmetric_couplings(n, rng);
			return h_total(coop, opp, n, cfg.n_cap);
		}
		case HamiltonianKind::External: return h_ext(cfg.field, n, cfg.n_cap);
		}
		return h_meanfield(-1.0, n, cfg.n_cap);
	}();
	const SpectrumPtr sp = factorize(h);

	std::vector<SiteObservable> observables;
	for(int site = 1; site <= n; ++site)
	{
		for(Axis a : kAllAxes)
		{
			observables.push_back({site, a});
		}
	}
	std::vector<std::pair<SiteObservable, SiteObservable>> pairs;
	if(cfg.exhaustive)
	{
		for(const auto& a : observables)
		{
			for(const auto& b : observables)
			{
				pairs.emplace_back(a, b);
			}
		}
	}
	else
	{
		for(int k = 0; k < cfg.samples; ++k)
		{
			const auto& a = observables[rng.index(observables.size())];
			const auto& b = observables[rng.index(observables.size())];
			pairs.emplace_back(a, b);
		}
	}

	double worst = 0.0;
	for(const double beta : cfg.betas)
	{
		const GibbsState state = gibbs(sp, beta);
		const auto residuals = parallel_map(pairs.size(), cfg.threads, [&](std::size_t k) {
			const auto& [a, b] = pairs[k];
			return kms_residual(state, beta, embed(pauli(a.axis), a.site, n, cfg.n_cap),
			                    embed(pauli(b.axis), b.site, n, cfg.n_cap));
		});
		for(std::size_t k = 0; k < pairs.size(); ++k)
		{
			const auto& [a, b] = pairs[k];
			const bool passed = residuals[k] < cfg.kms_threshold;
			worst = std::max(worst, residuals[k]);
			res.numerical_failure = res.numerical_failure || !passed;
			res.table.rows.push_back({std::int64_t{n}, beta, to_string(cfg.hamiltonian), std::int64_t{a.site},
			                          std::int64_t{static_cast<int>(a.axis)}, std::int64_t{b.site},
			                          std::int64_t{static_cast<int>(b.axis)}, residuals[k], passed});
		}
	}
	res.meta["max_residual"] = worst;
	res.meta["threshold"] = cfg.kms_threshold;
	res.meta["pairs"] = pairs.size();
	res.summary.push_back("max KMS residual " + format_double(worst) + " over " +
	                      std::to_string(res.table.rows.size()) + " checks");
	return res;
}

inline RunResult run_evolve(const SweepConfig& cfg)
{
	RunResult res;
	res.table.columns = {"N", "t", "exact_1", "exact_2", "exact_3", "meanfield_1", "meanfield_2", "meanfield_3",
	                     "deviation"};
	const std::vector<int> ns = cfg.n_list.empty() ? std::vector<int>{cfg.n_agents} : cfg.n_list;
	const auto times = linear_grid(0.0, cfg.time_max, cfg.time_steps);
	const double J = *cfg.J;
	const auto records = parallel_map(ns.size(), cfg.threads, [&](std::size_t k) {
		return trajectory(ns[k], J, cfg.initial, times, cfg.n_cap);
	});
	auto deviations = nlohmann::ordered_json::object();
	for(const auto& rec : records)
	{
		for(std::size_t k = 0; k < rec.times.size(); ++k)
		{
			const auto& e = rec.exact_mean[k];
			const auto& m = rec.meanfield_mean[k];
			double dev = 0.0;
			for(Axis a : kAllAxes)
			{
				dev = std::max(dev, std::abs(e[a] - m[a]));
			}
			res.table.rows.push_back(
			    {std::int64_t{rec.n_agents}, rec.times[k], e.m1, e.m2, e.m3, m.m1, m.m2, m.m3, dev});
		}
		deviations[std::to_string(rec.n_agents)] = rec.max_deviation();
		res.summary.push_back("N=" + std::to_string(rec.n_agents) +
		                      " max deviation " + format_double(rec.max_deviation()));
	}
	res.meta["max_deviation"] = deviations;
	return res;
}

inline RunResult run_algebra_check(const SweepConfig& cfg)
{
	RunResult res;
	res.table.columns = {"identity", "n", "max_error", "tolerance", "passed"};
	auto record = [&res](const std::string& name, int n, double err, double tol) {
		const bool ok = err <= tol;
		res.numerical_failure = res.numerical_failure || !ok;
		res.table.rows.push_back({name, std::int64_t{n}, err, tol, ok});
	};

	const Operator plus = pauli(PauliKind::Plus);
	const Operator minus = pauli(PauliKind::Minus);
	const Operator z = pauli(PauliKind::Z);
	const Operator id = pauli(PauliKind::Id);
	const Operator zero = Operator::zero(2);
	constexpr double tol = 1e-14;
	record("plus_squared_zero", 1, max_abs_diff(plus * plus, zero), tol);
	record("minus_squared_zero", 1, max_abs_diff(minus * minus, zero), tol);
	record("comm_plus_z", 1, max_abs_diff(commutator(plus, z), -2.0 * plus), tol);
	record("comm_minus_z", 1, max_abs_diff(commutator(minus, z), 2.0 * minus), tol);
	record("comm_plus_minus", 1, max_abs_diff(commutator(plus, minus), z), tol);
	record("anticomm_plus_minus", 1, max_abs_diff(anticommutator(plus, minus), id), tol);
	record("sigma1_decomposition", 1, max_abs_diff(pauli(PauliKind::X), plus + minus), 0.0);
	record("sigma2_decomposition", 1, max_abs_diff(pauli(PauliKind::Y), Complex(0.0, 1.0) * (minus - plus)), 0.0);

	constexpr PauliKind kinds[] = {PauliKind::X, PauliKind::Y, PauliKind::Z, PauliKind::Plus, PauliKind::Minus};
	for(int n = 2; n <= cfg.n_agents; ++n)
	{
		double err = 0.0;
		for(int i = 1; i <= n; ++i)
		{
			for(int j = 1; j <= n; ++j)
			{
				if(i == j)
				{
					continue;
				}
				for(PauliKind a : kinds)
				{
					for(PauliKind b : kinds)
					{
						err = std::max(err, max_abs_entry(commutator(embed(pauli(a), i, n), embed(pauli(b), j, n)).matrix()));
					}
				}
			}
		}
		record("cross_site_commutation", n, err, tol);
	}

	const int n = cfg.n_agents;
	const Operator hm = h_meanfield(-1.0, n, cfg.n_cap);
	const auto [coop, opp] = MeanFieldCoupling::heisenberg(-1.0).pair_couplings(n);
	record("meanfield_reduction", n, max_abs_diff(h_total(coop, opp, n, cfg.n_cap), hm), 1e-13);
	double cons = 0.0;
	for(Axis a : kAllAxes)
	{
		cons = std::max(cons, max_abs_entry(commutator(hm, total_spin(a, n, cfg.n_cap)).matrix()));
	}
	record("total_spin_conservation", n, cons, 1e-12);

	const auto failed = std::count_if(res.table.rows.begin(), res.table.rows.end(),
	                                  [](const Row& r) { return !std::get<bool>(r.back()); });
	res.summary.push_back(std::to_string(res.table.rows.size()) + " identities checked, " + std::to_string(failed) +
	                      " failed");
	return res;
}

} // namespace detail

/// Serialized output in the configured format.
[[nodiscard]] inline std::string render(const RunResult& res)
{
	if(res.config.format == OutputFormat::Json)
	{
		nlohmann::ordered_json meta = res.meta.is_null() ? nlohmann::ordered_json::object() : res.meta;
		meta["version"] = res.version;
		meta["numerical_failure"] = res.numerical_failure;
		return to_json(res.table, config_to_json(res.config), meta);
	}
	return to_csv(res.table);
}

/// Validate, dispatch, and (when an output path is set) write the result atomically.
/// Wall time is reported in the result but never persisted, so equal configs give equal files.
[[nodiscard]] inline RunResult run(const SweepConfig& cfg)
{
	validate(cfg);
	const auto start = std::chrono::steady_clock::now();
	RunResult res = [&] {
		switch(cfg.command)
		{
		case Command::SolveM: return detail::run_solve_m(cfg);
		case Command::PhaseDiagram: return detail::run_phase_diagram(cfg);
		case Command::KmsCheck: return detail::run_kms_check(cfg);
		case Command::Evolve: return detail::run_evolve(cfg);
		case Command::AlgebraCheck: return detail::run_algebra_check(cfg);
		}
		throw InvalidConfig("unhandled command");
	}();
	res.config = cfg;
	res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	if(!cfg.output_path.empty())
	{
		write_atomic(cfg.output_path, render(res));
	}
	return res;
}

} // namespace spinconsensus::harness
