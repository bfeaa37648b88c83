#pragma once

#include "spin_algebra.hpp"

#include <array>
#include <cmath>

namespace spinconsensus
{

/// Real 3-vector of spin expectations (m1, m2, m3); also used for the field f = J m.
struct BlochVector
{
	double m1 = 0.0;
	double m2 = 0.0;
	double m3 = 0.0;

	[[nodiscard]] double norm() const { return std::sqrt(m1 * m1 + m2 * m2 + m3 * m3); }

	[[nodiscard]] double operator[](Axis a) const
	{
		switch(a)
		{
		case Axis::X: return m1;
		case Axis::Y: return m2;
		case Axis::Z: return m3;
		}
		return 0.0;
	}

	[[nodiscard]] bool finite() const
	{
		return std::isfinite(m1) && std::isfinite(m2) && std::isfinite(m3);
	}

	friend BlochVector operator*(double s, const BlochVector& v)
	{
		return {s * v.m1, s * v.m2, s * v.m3};
	}

	friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// f . sigma as a 2x2 matrix.
[[nodiscard]] inline Matrix2 dot_sigma(const BlochVector& f)
{
	return f.m1 * pauli(Axis::X).matrix() + f.m2 * pauli(Axis::Y).matrix() +
	       f.m3 * pauli(Axis::Z).matrix();
}

/// Pure single-agent state whose Bloch vector is the unit vector u.
[[nodiscard]] inline StateVector agent_state_from_bloch(const BlochVector& u)
{
	constexpr double tol = 1e-9;
	if(!u.finite() || std::abs(u.norm() - 1.0) > tol)
	{
		throw NonUnitBloch("pure agent state needs |u| = 1, got " + std::to_string(u.norm()));
	}
	const double n = u.norm();
	const double theta = std::acos(std::clamp(u.m3 / n, -1.0, 1.0));
	const double phi = std::atan2(u.m2, u.m1);
	return agent_state(std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi));
}

} // namespace spinconsensus
