#include "oracles.hpp"

#include <spinconsensus/mean_field.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace spinconsensus;

TEST(Phi, Values)
{
	EXPECT_DOUBLE_EQ(phi(0.0, -1.0, 2.0), 0.0);
	EXPECT_NEAR(phi(1.0, -1.0, 2.0), 0.035972419924183116, 1e-16);
	EXPECT_NEAR(phi(0.5, -1.0, 0.5), 0.5 - std::tanh(0.25), 1e-16);
	EXPECT_DOUBLE_EQ(phi_prime(0.0, -1.0, 2.0), -1.0);
}

TEST(Phi, DerivativeMatchesFiniteDifference)
{
	std::mt19937_64 rng(1);
	std::uniform_real_distribution<double> um(0.0, 1.0);
	std::uniform_real_distribution<double> uj(-3.0, 1.0);
	std::uniform_real_distribution<double> ub(0.1, 5.0);
	const double h = 1e-5;
	for(int trial = 0; trial < 200; ++trial)
	{
		const double m = um(rng);
		const double J = uj(rng);
		const double beta = ub(rng);
		const double fd = (phi(m + h, J, beta) - phi(m - h, J, beta)) / (2.0 * h);
		EXPECT_NEAR(phi_prime(m, J, beta), fd, 1e-6);
	}
}

TEST(TransverseKms, ReferenceValue)
{
	EXPECT_NEAR(eq38_lhs({0.0, 0.5, 0.0}, -1.0, 1.0), -0.0222599810033284749, 1e-15);
}

TEST(TransverseKms, VanishesWithoutTransverseComponents)
{
	EXPECT_EQ(eq38_lhs({0.7, 0.0, 0.0}, -1.0, 2.0), 0.0);
	EXPECT_EQ(eq38_lhs({0.0, 0.0, 0.0}, -1.0, 2.0), 0.0);
}

TEST(TransverseKms, VanishesAtConsensusRoot)
{
	// cosh(x)/m + sinh(x)/m^2 = 0 exactly when tanh(x) = -m
	for(double beta : {1.5, 2.0, 4.0})
	{
		const double m = solve_m(-1.0, beta).m_c;
		ASSERT_NEAR(m, oracle::consensus_root(-1.0, beta), 1e-10);
		const double c = 1.0 / std::sqrt(2.0);
		EXPECT_LE(std::abs(eq38_lhs({0.0, c * m, c * m}, -1.0, beta)), 1e-12) << "beta=" << beta;
	}
}

TEST(TransverseKms, ContinuousThroughSeriesBranch)
{
	const double J = -1.0;
	const double beta = 1.0;
	// either side of |x| = 1e-4
	const double below = eq38_lhs({0.0, 0.99e-4, 0.0}, J, beta);
	const double above = eq38_lhs({0.0, 1.01e-4, 0.0}, J, beta);
	EXPECT_NEAR(below / (0.99e-4 * 0.99e-4), above / (1.01e-4 * 1.01e-4), 1e-8);
	// direct formula away from the branch point
	const double m = 0.3;
	const double x = J * m * beta;
	const double direct = std::sinh(x) * m * m * (std::cosh(x) / m + std::sinh(x) / (m * m));
	EXPECT_NEAR(eq38_lhs({0.0, 0.0, m}, J, beta), direct, 1e-15);
}

TEST(SolveM, DisorderedBelowThreshold)
{
	for(double beta : {0.1, 0.5, 0.999, 1.0})
	{
		const MeanFieldPoint p = solve_m(-1.0, beta);
		EXPECT_EQ(p.m_c, 0.0);
		EXPECT_TRUE(p.converged);
	}
	EXPECT_EQ(solve_m(0.5, 3.0).m_c, 0.0);
}

TEST(SolveM, MatchesIndependentRoot)
{
	const MeanFieldPoint p = solve_m(-1.0, 2.0);
	EXPECT_TRUE(p.converged);
	EXPECT_NEAR(p.m_c, 0.957504024077268740676, 1e-10);
	EXPECT_NEAR(p.m_c, oracle::consensus_root(-1.0, 2.0), 1e-10);
	EXPECT_LE(p.residual, 1e-12);
}

TEST(SolveM, RandomAgreementWithOracle)
{
	std::mt19937_64 rng(2);
	std::uniform_real_distribution<double> uj(-3.0, -0.2);
	std::uniform_real_distribution<double> ub(0.2, 6.0);
	for(int trial = 0; trial < 40; ++trial)
	{
		const double J = uj(rng);
		const double beta = ub(rng);
		const MeanFieldPoint p = solve_m(J, beta);
		if(J * beta >= -1.0)
		{
			EXPECT_EQ(p.m_c, 0.0);
			continue;
		}
		EXPECT_TRUE(p.converged);
		// the oracle's scan step bounds its sensitivity close to the transition
		if(J * beta < -1.05)
		{
			EXPECT_NEAR(p.m_c, oracle::consensus_root(J, beta), 1e-10) << "J=" << J << " beta=" << beta;
		}
	}
}

TEST(SolveM, LowTemperature)
{
	const MeanFieldPoint p10 = solve_m(-1.0, 10.0);
	EXPECT_GT(p10.m_c, 0.9999);
	EXPECT_NEAR(p10.m_c, 0.9999999958776924, 1e-12);
	const MeanFieldPoint p20 = solve_m(-1.0, 20.0);
	EXPECT_TRUE(p20.converged);
	EXPECT_GT(p20.m_c, p10.m_c);
	EXPECT_LT(p20.m_c, 1.0);
	const MeanFieldPoint p100 = solve_m(-1.0, 100.0);
	EXPECT_TRUE(p100.converged);
	EXPECT_LT(p100.m_c, 1.0);
}

TEST(SolveM, Errors)
{
	EXPECT_THROW((void)solve_m(-1.0, 0.0), NonPositiveBeta);
	EXPECT_THROW((void)solve_m(-1.0, -2.0), NonPositiveBeta);
	SolverOptions bad;
	bad.tolerance = 0.0;
	EXPECT_THROW((void)solve_m(-1.0, 2.0, bad), NonPositiveTolerance);
}

TEST(SolveM, SharpTransition)
{
	for(int k = 1; k <= 100; ++k)
	{
		const double beta = 0.05 * k;
		const MeanFieldPoint p = solve_m(-1.0, beta);
		if(beta <= 1.0)
		{
			EXPECT_EQ(p.m_c, 0.0) << "beta=" << beta;
		}
		else
		{
			EXPECT_GT(p.m_c, 0.0) << "beta=" << beta;
		}
	}
}

TEST(SolveM, MonotoneInBetaAndBounded)
{
	double prev = 0.0;
	for(int k = 1; k <= 200; ++k)
	{
		const double beta = 0.1 * k;
		const MeanFieldPoint p = solve_m(-1.3, beta);
		EXPECT_GE(p.m_c, prev);
		EXPECT_GE(p.m_c, 0.0);
		EXPECT_LT(p.m_c, 1.0);
		prev = p.m_c;
	}
}

TEST(CriticalTemperature, IsMinusJ)
{
	EXPECT_DOUBLE_EQ(critical_temperature(-1.0), 1.0);
	EXPECT_DOUBLE_EQ(critical_temperature(-2.5), 2.5);
	EXPECT_THROW((void)critical_temperature(0.0), NonNegativeCoupling);
	EXPECT_THROW((void)critical_temperature(1.0), NonNegativeCoupling);
}

TEST(PhaseCurve, SinglePoints)
{
	const std::vector<double> ts = {0.5, 1.5};
	const auto curve = phase_curve(-1.0, ts);
	ASSERT_EQ(curve.size(), 2u);
	EXPECT_NEAR(curve[0].m_c, 0.957504024077268740676, 1e-10);
	EXPECT_EQ(curve[1].m_c, 0.0);
	EXPECT_DOUBLE_EQ(curve[0].temperature(), 0.5);
}

TEST(PhaseCurve, NearCriticalIsSmall)
{
	const std::vector<double> ts = {0.99999};
	const auto curve = phase_curve(-1.0, ts);
	EXPECT_GT(curve[0].m_c, 0.0);
	EXPECT_LT(curve[0].m_c, 0.01);
}

TEST(PhaseCurve, NonIncreasingInTemperature)
{
	std::vector<double> ts;
	for(int k = 1; k <= 60; ++k) ts.push_back(0.05 * k);
	const auto curve = phase_curve(-1.0, ts);
	for(std::size_t k = 1; k < curve.size(); ++k)
	{
		EXPECT_LE(curve[k].m_c, curve[k - 1].m_c);
	}
	EXPECT_THROW((void)phase_curve(1.0, ts), NonNegativeCoupling);
	const std::vector<double> bad = {0.5, 0.0};
	EXPECT_THROW((void)phase_curve(-1.0, bad), NonPositiveBeta);
}
