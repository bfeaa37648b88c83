#include <spinconsensus/harness/config.hpp>
#include <spinconsensus/harness/run.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace
{

constexpr const char* kUsage = R"(usage: spinconsensus <command> [flags] [--config FILE]

commands:
  solve-m        --J J --beta B[,B...]
  phase-diagram  --J J --t-min T0 --t-max T1 --steps K
  kms-check      --n N --beta B[,B...] [--hamiltonian meanfield|total|ext] [--J J] [--field B]
                 [--exhaustive] [--samples K] [--kms-threshold X]
  evolve         --J J [--n N | --n-list N1,N2,...] [--u u1,u2,u3] [--time-max T] [--time-steps K]
  algebra-check  [--n N]

common flags:
  --seed S  --tol X  --out PATH  --format csv|json  --n-cap N  --threads K
  (SPINCONSENSUS_THREADS is used when --threads is absent)

config file: key=value lines (keys are flag names without dashes, plus `command`),
'#' starts a comment; flags on the command line override the file.

exit codes: 0 ok, 2 invalid configuration, 3 numerical non-convergence, 1 other failure
)";

} // namespace

int main(int argc, char** argv)
{
	namespace h = spinconsensus::harness;
	const std::vector<std::string> args(argv + 1, argv + argc);
	for(const auto& a : args)
	{
		if(a == "-h" || a == "--help")
		{
			std::cout << kUsage;
			return h::kExitOk;
		}
	}

	h::SweepConfig cfg;
	try
	{
		cfg = h::parse_config(args);
		h::validate(cfg);
	}
	catch(const spinconsensus::InvalidConfig& e)
	{
		std::cerr << "invalid configuration: " << e.what() << "\n\n" << kUsage;
		return h::kExitInvalidConfig;
	}
	catch(const spinconsensus::Error& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return h::kExitFailure;
	}

	try
	{
		const h::RunResult res = h::run(cfg);
		if(cfg.output_path.empty())
		{
			std::cout << h::render(res);
		}
		for(const auto& line : res.summary)
		{
			(cfg.output_path.empty() ? std::cerr : std::cout) << line << '\n';
		}
		std::fprintf(cfg.output_path.empty() ? stderr : stdout, "wall time %.3f s (%s %s)\n", res.wall_seconds,
		             h::to_string(cfg.command).c_str(), res.version.c_str());
		return res.exit_code();
	}
	catch(const spinconsensus::InvalidConfig& e)
	{
		std::cerr << "invalid configuration: " << e.what() << '\n';
		return h::kExitInvalidConfig;
	}
	catch(const std::exception& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return h::kExitFailure;
	}
}
