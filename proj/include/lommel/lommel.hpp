#pragma once

#include "lommel/acceleration.hpp"
#include "lommel/chebyshev_route.hpp"
#include "lommel/config.hpp"
#include "lommel/conventions.hpp"
#include "lommel/error.hpp"
#include "lommel/identities.hpp"
#include "lommel/oracle.hpp"
#include "lommel/oscillatory.hpp"
#include "lommel/quadrature.hpp"
#include "lommel/report.hpp"
#include "lommel/specfun.hpp"
