#pragma once

#include "bloch.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "hamiltonians.hpp"
#include "mean_field.hpp"
#include "spin_algebra.hpp"
#include "thermal_kms.hpp"
