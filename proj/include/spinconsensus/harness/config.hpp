#pragma once

#include "../bloch.hpp"
#include "../errors.hpp"
#include "../spin_algebra.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace spinconsensus::harness
{

enum class Command
{
	SolveM,
	PhaseDiagram,
	KmsCheck,
	Evolve,
	AlgebraCheck
};

enum class OutputFormat
{
	Csv,
	Json
};

enum class HamiltonianKind
{
	MeanField,
	Total,
	External
};

[[nodiscard]] inline std::string to_string(Command c)
{
	switch(c)
	{
	case Command::SolveM: return "solve-m";
	case Command::PhaseDiagram: return "phase-diagram";
	case Command::KmsCheck: return "kms-check";
	case Command::Evolve: return "evolve";
	case Command::AlgebraCheck: return "algebra-check";
	}
	return "?";
}

[[nodiscard]] inline std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

[[nodiscard]] inline std::string to_string(HamiltonianKind h)
{
	switch(h)
	{
	case HamiltonianKind::MeanField: return "meanfield";
	case HamiltonianKind::Total: return "total";
	case HamiltonianKind::External: return "ext";
	}
	return "?";
}

/// Everything one CLI invocation needs. Fields unused by a command are ignored.
struct SweepConfig
{
	Command command = Command::SolveM;
	std::optional<double> J;
	std::vector<double> betas;
	std::optional<double> t_min;
	std::optional<double> t_max;
	std::optional<int> steps;
	int n_agents = 4;
	std::vector<int> n_list;
	std::uint64_t seed = 0;
	double tolerance = 1e-12;
	std::string output_path;
	OutputFormat format = OutputFormat::Csv;
	int n_cap = kDefaultAgentCap;
	int threads = 1;
	bool exhaustive = false;
	int samples = 32;
	HamiltonianKind hamiltonian = HamiltonianKind::MeanField;
	double field = 1.0;
	double kms_threshold = 1e-9;
	BlochVector initial{1.0, 0.0, 0.0};
	double time_max = 2.0;
	int time_steps = 41;
};

namespace detail
{

inline const std::set<std::string>& known_keys()
{
	static const std::set<std::string> keys = {
	    "command", "J",       "beta",    "t-min",     "t-max",       "steps",     "n",          "n-list",
	    "seed",    "tol",     "out",     "format",    "n-cap",       "threads",   "exhaustive", "samples",
	    "hamiltonian", "field", "kms-threshold", "u", "time-max", "time-steps"};
	return keys;
}

[[nodiscard]] inline std::string trim(const std::string& s)
{
	const auto b = s.find_first_not_of(" \t\r");
	if(b == std::string::npos)
	{
		return {};
	}
	const auto e = s.find_last_not_of(" \t\r");
	return s.substr(b, e - b + 1);
}

template <typename T>
[[nodiscard]] T parse_number(const std::string& text, const std::string& field)
{
	std::size_t used = 0;
	T value{};
	try
	{
		if constexpr(std::is_same_v<T, int>)
		{
			value = std::stoi(text, &used);
		}
		else
		{
			value = std::stod(text, &used);
		}
	}
	catch(const std::exception&)
	{
		used = 0;
	}
	if(used == 0 || used != text.size())
	{
		throw FieldTypeError(field + ": cannot parse '" + text + "'");
	}
	return value;
}

template <typename T>
[[nodiscard]] std::vector<T> parse_list(const std::string& text, const std::string& field)
{
	std::vector<T> out;
	std::stringstream ss(text);
	std::string item;
	while(std::getline(ss, item, ','))
	{
		item = trim(item);
		if(item.empty())
		{
			throw FieldTypeError(field + ": empty list element in '" + text + "'");
		}
		out.push_back(parse_number<T>(item, field));
	}
	if(out.empty())
	{
		throw FieldTypeError(field + ": empty list");
	}
	return out;
}

[[nodiscard]] inline std::optional<Command> parse_command(const std::string& s)
{
	if(s == "solve-m") return Command::SolveM;
	if(s == "phase-diagram") return Command::PhaseDiagram;
	if(s == "kms-check") return Command::KmsCheck;
	if(s == "evolve") return Command::Evolve;
	if(s == "algebra-check") return Command::AlgebraCheck;
	return std::nullopt;
}

[[nodiscard]] inline int default_threads()
{
	if(const char* env = std::getenv("SPINCONSENSUS_THREADS"))
	{
		try
		{
			const int n = std::stoi(env);
			if(n >= 1)
			{
				return n;
			}
		}
		catch(const std::exception&)
		{
		}
		throw FieldTypeError(std::string("SPINCONSENSUS_THREADS: expected positive integer, got '") + env + "'");
	}
	return std::max(1u, std::thread::hardware_concurrency());
}

/// key=value lines, '#' comments, blank lines ignored.
[[nodiscard]] inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path)
{
	std::ifstream in(path);
	if(!in)
	{
		throw IoFailure("cannot open config file '" + path + "'");
	}
	std::vector<std::pair<std::string, std::string>> entries;
	std::string line;
	int lineno = 0;
	while(std::getline(in, line))
	{
		++lineno;
		if(const auto hash = line.find('#'); hash != std::string::npos)
		{
			line.erase(hash);
		}
		line = trim(line);
		if(line.empty())
		{
			continue;
		}
		const auto eq = line.find('=');
		if(eq == std::string::npos)
		{
			throw FieldTypeError(path + ":" + std::to_string(lineno) + ": expected key=value");
		}
		std::string key = trim(line.substr(0, eq));
		std::string value = trim(line.substr(eq + 1));
		if(!known_keys().contains(key))
		{
			throw UnknownFlag(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
		}
		entries.emplace_back(std::move(key), std::move(value));
	}
	return entries;
}

} // namespace detail

/// Parse argv (without the program name). The first bare token is the command;
/// `--config FILE` supplies defaults that explicit flags override.
[[nodiscard]] inline SweepConfig parse_config(const std::vector<std::string>& argv)
{
	// split off the command and the config path before handing flags to CLI11
	std::optional<std::string> command_token;
	std::optional<std::string> config_path;
	std::vector<std::string> flags;
	for(std::size_t k = 0; k < argv.size(); ++k)
	{
		const std::string& a = argv[k];
		if(a == "--config")
		{
			if(k + 1 >= argv.size())
			{
				throw MissingRequired("--config needs a file path");
			}
			config_path = argv[++k];
		}
		else if(a.rfind("--config=", 0) == 0)
		{
			config_path = a.substr(9);
		}
		else if(!command_token && flags.empty() && !a.empty() && a[0] != '-')
		{
			command_token = a;
		}
		else
		{
			flags.push_back(a);
		}
	}

	std::vector<std::string> args;
	if(config_path)
	{
		for(auto& [key, value] : detail::read_config_file(*config_path))
		{
			if(key == "command")
			{
				if(!command_token)
				{
					command_token = value;
				}
				continue;
			}
			args.push_back("--" + key + "=" + value);
		}
	}
	args.insert(args.end(), flags.begin(), flags.end());

	if(!command_token)
	{
		throw MissingRequired("a command is required: solve-m, phase-diagram, kms-check, evolve, algebra-check");
	}
	const auto command = detail::parse_command(*command_token);
	if(!command)
	{
		throw UnknownFlag("unknown command '" + *command_token + "'");
	}

	SweepConfig cfg;
	cfg.command = *command;

	CLI::App app{"spinconsensus"};
	app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
	app.set_help_flag();

	double J = 0.0;
	std::string betas;
	double t_min = 0.0;
	double t_max = 0.0;
	int steps = 0;
	std::string n_list;
	std::string format = "csv";
	std::string hamiltonian = "meanfield";
	std::string initial;
	bool exhaustive = false;
	std::optional<int> threads;

	auto* opt_J = app.add_option("--J", J);
	app.add_option("--beta", betas);
	auto* opt_tmin = app.add_option("--t-min", t_min);
	auto* opt_tmax = app.add_option("--t-max", t_max);
	auto* opt_steps = app.add_option("--steps", steps);
	app.add_option("--n", cfg.n_agents);
	app.add_option("--n-list", n_list);
	app.add_option("--seed", cfg.seed);
	app.add_option("--tol", cfg.tolerance);
	app.add_option("--out", cfg.output_path);
	app.add_option("--format", format);
	app.add_option("--n-cap", cfg.n_cap);
	app.add_option("--threads", threads);
	app.add_flag("--exhaustive", exhaustive);
	app.add_option("--samples", cfg.samples);
	app.add_option("--hamiltonian", hamiltonian);
	app.add_option("--field", cfg.field);
	app.add_option("--kms-threshold", cfg.kms_threshold);
	app.add_option("--u", initial);
	app.add_option("--time-max", cfg.time_max);
	app.add_option("--time-steps", cfg.time_steps);

	std::vector<std::string> reversed(args.rbegin(), args.rend());
	try
	{
		app.parse(reversed);
	}
	catch(const CLI::ExtrasError& e)
	{
		throw UnknownFlag(e.what());
	}
	catch(const CLI::ConversionError& e)
	{
		throw FieldTypeError(e.what());
	}
	catch(const CLI::ValidationError& e)
	{
		throw FieldTypeError(e.what());
	}
	catch(const CLI::ArgumentMismatch& e)
	{
		throw FieldTypeError(e.what());
	}
	catch(const CLI::ParseError& e)
	{
		throw InvalidConfig(e.what());
	}

	if(opt_J->count() > 0) cfg.J = J;
	if(opt_tmin->count() > 0) cfg.t_min = t_min;
	if(opt_tmax->count() > 0) cfg.t_max = t_max;
	if(opt_steps->count() > 0) cfg.steps = steps;
	if(!betas.empty()) cfg.betas = detail::parse_list<double>(betas, "beta");
	if(!n_list.empty()) cfg.n_list = detail::parse_list<int>(n_list, "n-list");
	if(!initial.empty())
	{
		const auto u = detail::parse_list<double>(initial, "u");
		if(u.size() != 3)
		{
			throw FieldTypeError("u: expected three comma-separated components");
		}
		cfg.initial = {u[0], u[1], u[2]};
	}
	cfg.exhaustive = exhaustive;
	cfg.threads = threads ? *threads : detail::default_threads();

	if(format == "csv") cfg.format = OutputFormat::Csv;
	else if(format == "json") cfg.format = OutputFormat::Json;
	else throw FieldTypeError("format: expected csv or json, got '" + format + "'");

	if(hamiltonian == "meanfield") cfg.hamiltonian = HamiltonianKind::MeanField;
	else if(hamiltonian == "total") cfg.hamiltonian = HamiltonianKind::Total;
	else if(hamiltonian == "ext") cfg.hamiltonian = HamiltonianKind::External;
	else throw FieldTypeError("hamiltonian: expected meanfield, total or ext, got '" + hamiltonian + "'");

	return cfg;
}

/// Semantic checks that depend on the command. Throws InvalidConfig.
inline void validate(const SweepConfig& cfg)
{
	auto require = [](bool ok, const std::string& msg) {
		if(!ok)
		{
			throw InvalidConfig(msg);
		}
	};
	require(cfg.tolerance > 0.0, "tol must be > 0");
	require(cfg.n_cap >= 1, "n-cap must be >= 1");
	require(cfg.threads >= 1, "threads must be >= 1");

	switch(cfg.command)
	{
	case Command::SolveM:
		if(!cfg.J) throw MissingRequired("solve-m needs --J");
		if(cfg.betas.empty()) throw MissingRequired("solve-m needs --beta");
		for(double b : cfg.betas) require(b > 0.0, "beta values must be > 0");
		break;
	case Command::PhaseDiagram:
		if(!cfg.J) throw MissingRequired("phase-diagram needs --J");
		if(!cfg.t_min || !cfg.t_max || !cfg.steps)
			throw MissingRequired("phase-diagram needs --t-min, --t-max and --steps");
		require(*cfg.J < 0.0, "phase-diagram needs J < 0");
		require(*cfg.steps >= 1, "steps must be >= 1 (empty temperature grid)");
		require(*cfg.t_min > 0.0, "t-min must be > 0");
		require(*cfg.t_max >= *cfg.t_min, "t-max must be >= t-min");
		break;
	case Command::KmsCheck:
		if(cfg.betas.empty()) throw MissingRequired("kms-check needs --beta");
		for(double b : cfg.betas) require(b >= 0.0, "beta values must be >= 0");
		require(cfg.n_agents >= 1 && cfg.n_agents <= cfg.n_cap, "n must be in 1..n-cap");
		require(!cfg.exhaustive || cfg.n_agents <= 4, "exhaustive mode is limited to n <= 4");
		require(cfg.samples >= 1, "samples must be >= 1");
		require(cfg.kms_threshold > 0.0, "kms-threshold must be > 0");
		break;
	case Command::Evolve:
		if(!cfg.J) throw MissingRequired("evolve needs --J");
		for(int n : cfg.n_list) require(n >= 1 && n <= cfg.n_cap, "n-list entries must be in 1..n-cap");
		require(cfg.n_agents >= 1 && cfg.n_agents <= cfg.n_cap, "n must be in 1..n-cap");
		require(std::abs(cfg.initial.norm() - 1.0) <= 1e-9, "u must be a unit vector");
		require(cfg.time_steps >= 1, "time-steps must be >= 1");
		require(cfg.time_max >= 0.0, "time-max must be >= 0");
		break;
	case Command::AlgebraCheck:
		require(cfg.n_agents >= 1 && cfg.n_agents <= std::min(cfg.n_cap, 8), "algebra-check needs 1 <= n <= 8");
		break;
	}
}

} // namespace spinconsensus::harness
