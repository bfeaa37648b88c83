// Prints the consensus parameter m_c(T) for J = -1 next to the finite-N
// thermal check of the same model.
#include <spinconsensus/spinconsensus.hpp>

#include <cstdio>
#include <vector>

int main()
{
	using namespace spinconsensus;
	constexpr double J = -1.0;

	std::vector<double> temps;
	for(int k = 1; k <= 15; ++k)
	{
		temps.push_back(0.1 * k);
	}
	std::printf("T_c = %.3f\n\n%6s %12s\n", critical_temperature(J), "T", "m_c");
	for(const auto& p : phase_curve(J, temps))
	{
		std::printf("%6.2f %12.8f\n", p.temperature(), p.m_c);
	}

	const int n = 4;
	const Operator h = h_meanfield(J, n);
	const Operator s1 = embed(pauli(Axis::X), 1, n);
	std::printf("\nKMS residual, N=%d, A=B=sigma^1_1:\n", n);
	for(double beta : {0.1, 1.0, 5.0, 10.0})
	{
		std::printf("  beta=%5.1f  %.3e\n", beta, kms_residual(h, beta, s1, s1));
	}
}
