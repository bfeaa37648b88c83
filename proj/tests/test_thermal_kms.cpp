#include "oracles.hpp"

#include <spinconsensus/hamiltonians.hpp>
#include <spinconsensus/thermal_kms.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace spinconsensus;

namespace
{

const Complex I(0.0, 1.0);

Operator z() { return pauli(PauliKind::Z); }

} // namespace

TEST(Expm, ZeroScaleIsIdentity)
{
	std::mt19937_64 rng(1);
	const Operator h(oracle::random_hermitian(8, rng));
	EXPECT_LE(max_abs_diff(expm_hermitian(h, 0.0), Operator::identity(8)), 1e-14);
}

TEST(Expm, QuarterTurnOfZ)
{
	const Operator u = expm_hermitian(z(), Complex(0.0, M_PI / 2.0));
	EXPECT_LE(std::abs(u(0, 0) - I), 1e-15);
	EXPECT_LE(std::abs(u(1, 1) + I), 1e-15);
	EXPECT_EQ(u(0, 1), Complex(0.0));
}

TEST(Expm, ImaginaryScaleIsUnitary)
{
	std::mt19937_64 rng(2);
	for(int trial = 0; trial < 20; ++trial)
	{
		const Operator h(oracle::random_hermitian(8, rng));
		const Matrix u = expm_hermitian(h, Complex(0.0, 0.37 * trial)).matrix();
		EXPECT_LE(oracle::max_abs(u.adjoint() * u - Matrix::Identity(8, 8)), 1e-13);
	}
}

TEST(Expm, MatchesPadeOracle)
{
	std::mt19937_64 rng(3);
	for(int trial = 0; trial < 20; ++trial)
	{
		const Matrix h = oracle::random_hermitian(16, rng);
		for(Complex s : {Complex(-0.5, 0.0), Complex(0.0, 1.3), Complex(0.2, -0.4)})
		{
			const Matrix ref = oracle::expm_pade(s * h);
			EXPECT_LE(oracle::max_abs(expm_hermitian(Operator(h), s).matrix() - ref), 1e-11 * oracle::max_abs(ref));
		}
	}
}

TEST(Expm, OverflowGuard)
{
	EXPECT_THROW((void)expm_hermitian(h_ext(1.0, 2), -400.0), OverflowRisk);
	EXPECT_NO_THROW((void)expm_hermitian(h_ext(1.0, 2), -300.0));
}

TEST(Gibbs, InfiniteTemperatureIsMaximallyMixed)
{
	const GibbsState g = gibbs(h_meanfield(-1.0, 3), 0.0);
	EXPECT_LE(max_abs_diff(g.rho(), (1.0 / 8.0) * Operator::identity(8)), 1e-15);
}

TEST(Gibbs, SingleSpin)
{
	const GibbsState g = gibbs(z(), 1.0);
	// e^-1 / (e + e^-1)
	EXPECT_NEAR(g.rho()(0, 0).real(), 0.1192029220221175559, 1e-15);
	EXPECT_NEAR(g.rho()(1, 1).real(), 0.8807970779778824441, 1e-15);
	EXPECT_EQ(g.rho()(0, 1), Complex(0.0));
}

TEST(Gibbs, InvariantUnderEnergyShift)
{
	std::mt19937_64 rng(4);
	const Operator h(oracle::random_hermitian(8, rng));
	const GibbsState a = gibbs(h, 1.7);
	const GibbsState b = gibbs(h + 5.0 * Operator::identity(8), 1.7);
	EXPECT_LE(max_abs_diff(a.rho(), b.rho()), 1e-13);
}

TEST(Gibbs, MatchesPadeOracle)
{
	std::mt19937_64 rng(5);
	const Matrix h = oracle::random_hermitian(8, rng);
	const Matrix e = oracle::expm_pade(-0.8 * h);
	const Matrix ref = e / e.trace();
	EXPECT_LE(oracle::max_abs(gibbs(Operator(h), 0.8).rho().matrix() - ref), 1e-13);
}

TEST(Gibbs, DensityMatrixInvariants)
{
	std::mt19937_64 rng(6);
	for(Eigen::Index dim : {2, 4, 16, 64})
	{
		const Operator h(oracle::random_hermitian(dim, rng));
		for(double beta : {0.1, 1.0, 5.0})
		{
			const GibbsState g = gibbs(h, beta);
			EXPECT_NEAR(g.rho().trace().real(), 1.0, 1e-12);
			EXPECT_TRUE(g.rho().hermitian());
			EXPECT_LE(hermiticity_error(g.rho().matrix()), 1e-15);
			Eigen::SelfAdjointEigenSolver<Matrix> es(g.rho().matrix());
			EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12) << "dim=" << dim << " beta=" << beta;
		}
	}
}

TEST(Gibbs, Errors)
{
	EXPECT_THROW((void)gibbs(z(), -0.1), NegativeBeta);
	EXPECT_THROW((void)gibbs(pauli(PauliKind::Plus), 1.0), NotHermitian);
	EXPECT_THROW((void)gibbs(h_ext(1.0, 2), 400.0), OverflowRisk);
}

TEST(Expect, Basics)
{
	const GibbsState g = gibbs(z(), 0.6);
	EXPECT_NEAR(expect(g, Operator::identity(2)).real(), 1.0, 1e-15);
	EXPECT_NEAR(expect(g, z()).real(), -std::tanh(0.6), 1e-15);
	EXPECT_THROW((void)expect(g, Operator::identity(4)), DimensionMismatch);
}

TEST(Expect, MeanFieldStateHasNoMagnetization)
{
	const GibbsState g = gibbs(h_meanfield(-1.0, 2), 2.0);
	for(Axis a : kAllAxes)
	{
		EXPECT_LE(std::abs(expect(g, mean_spin(a, 2))), 1e-14);
	}
}

TEST(Heisenberg, TimeZeroAndLadderPhase)
{
	std::mt19937_64 rng(7);
	const Operator h(oracle::random_hermitian(4, rng));
	const Operator a(oracle::random_hermitian(4, rng));
	EXPECT_LE(max_abs_diff(heisenberg(h, a, 0.0), a), 1e-14);

	const double t = 0.83;
	const Operator plus = pauli(PauliKind::Plus);
	EXPECT_LE(max_abs_diff(heisenberg(z(), plus, t), std::exp(2.0 * I * t) * plus), 1e-15);
}

TEST(Heisenberg, MatchesPadeOracle)
{
	std::mt19937_64 rng(8);
	const Matrix h = oracle::random_hermitian(8, rng);
	const Matrix a = oracle::random_hermitian(8, rng);
	const double t = 1.9;
	const Matrix u = oracle::expm_pade(I * t * h);
	EXPECT_LE(oracle::max_abs(heisenberg(Operator(h), Operator(a), t).matrix() - u * a * u.adjoint()), 1e-12);
}

TEST(Heisenberg, GibbsStateIsStationary)
{
	std::mt19937_64 rng(9);
	const Operator h(oracle::random_hermitian(8, rng));
	const Operator a(oracle::random_hermitian(8, rng));
	const GibbsState g = gibbs(h, 1.2);
	const Complex at0 = expect(g, a);
	for(double t : {0.5, 3.0, 11.0})
	{
		EXPECT_LE(std::abs(expect(g, heisenberg(h, a, t)) - at0), 1e-13);
	}
}

TEST(Heisenberg, IsAnAutomorphism)
{
	std::mt19937_64 rng(10);
	const Operator h(oracle::random_hermitian(8, rng));
	const Operator a(oracle::random_hermitian(8, rng));
	const Operator b(oracle::random_hermitian(8, rng));
	const double t = 0.7;
	const Operator lhs = heisenberg(h, a * b, t);
	const Operator rhs = heisenberg(h, a, t) * heisenberg(h, b, t);
	EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12);
	EXPECT_LE(max_abs_diff(heisenberg(h, a.adjoint(), t), heisenberg(h, a, t).adjoint()), 1e-13);
}

TEST(ContinueImag, ZeroAndLadder)
{
	std::mt19937_64 rng(11);
	const Operator h(oracle::random_hermitian(4, rng));
	const Operator a(oracle::random_hermitian(4, rng));
	EXPECT_LE(max_abs_diff(continue_imag(h, a, 0.0), a), 1e-14);
	const double beta = 0.9;
	EXPECT_LE(max_abs_diff(continue_imag(z(), pauli(PauliKind::Plus), beta),
	                       std::exp(-2.0 * beta) * pauli(PauliKind::Plus)),
	          1e-15);
	EXPECT_LE(max_abs_diff(continue_imag(h, Operator::identity(4), 0.5), Operator::identity(4)), 1e-13);
}

TEST(ContinueImag, MatchesPadeOracle)
{
	std::mt19937_64 rng(12);
	const Matrix h = oracle::random_hermitian(8, rng);
	const Matrix a = oracle::random_hermitian(8, rng);
	const double beta = 0.4;
	const Matrix ref = oracle::expm_pade(-beta * h) * a * oracle::expm_pade(beta * h);
	EXPECT_LE(oracle::max_abs(continue_imag(Operator(h), Operator(a), beta).matrix() - ref),
	          1e-11 * oracle::max_abs(ref));
}

TEST(ContinueImag, Composes)
{
	std::mt19937_64 rng(13);
	const Operator h(oracle::random_hermitian(8, rng));
	const Operator a(oracle::random_hermitian(8, rng));
	const Spectrum s = spectrum(h);
	const Operator twice = continue_imag(s, continue_imag(s, a, 0.3), 0.5);
	const Operator once = continue_imag(s, a, 0.8);
	EXPECT_LE(max_abs_diff(twice, once), 1e-10 * std::max(1.0, max_abs_entry(once.matrix())));
}

TEST(Kms, SingleSpinPairs)
{
	for(double beta : {0.1, 1.0, 5.0, 10.0})
	{
		for(PauliKind a : {PauliKind::X, PauliKind::Y, PauliKind::Z, PauliKind::Plus, PauliKind::Minus})
		{
			for(PauliKind b : {PauliKind::X, PauliKind::Y, PauliKind::Z, PauliKind::Plus, PauliKind::Minus})
			{
				EXPECT_LT(kms_residual(z(), beta, pauli(a), pauli(b)), 1e-12);
			}
		}
	}
}

TEST(Kms, MeanFieldCrossSitePairs)
{
	for(int n = 2; n <= 4; ++n)
	{
		const Operator h = h_meanfield(-1.0, n);
		for(double beta : {0.1, 1.0, 5.0, 10.0})
		{
			const GibbsState g = gibbs(h, beta);
			for(Axis x : kAllAxes)
			{
				for(Axis y : kAllAxes)
				{
					const double r = kms_residual(g, beta, embed(pauli(x), 1, n), embed(pauli(y), n, n));
					EXPECT_LT(r, 1e-9) << "n=" << n << " beta=" << beta;
				}
			}
		}
	}
}

TEST(Kms, RandomHermitianGenerators)
{
	std::mt19937_64 rng(14);
	for(int trial = 0; trial < 10; ++trial)
	{
		const Operator h(oracle::random_hermitian(8, rng));
		const Operator a(oracle::random_hermitian(8, rng));
		const Operator b(oracle::random_hermitian(8, rng));
		EXPECT_LT(kms_residual(h, 2.0, a, b), 1e-9);
	}
}

TEST(Kms, WrongContinuationTemperatureFails)
{
	const GibbsState g = gibbs(z(), 1.0);
	const Operator x = pauli(PauliKind::X);
	EXPECT_GT(kms_residual(g, 2.0, x, x), 1e-3);
	EXPECT_LT(kms_residual(g, 1.0, x, x), 1e-12);
}

TEST(Kms, OverflowGuard)
{
	EXPECT_THROW((void)kms_residual(z(), 351.0, z(), z()), OverflowRisk);
	EXPECT_THROW((void)continue_imag(z(), z(), -351.0), OverflowRisk);
}
