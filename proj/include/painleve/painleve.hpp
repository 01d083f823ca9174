#pragma once

#include "bilinear.hpp"
#include "error.hpp"
#include "formal_series.hpp"
#include "gamma.hpp"
#include "gil.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "operator_algebra.hpp"
#include "partitions.hpp"
#include "recurrence.hpp"
#include "vi_fit.hpp"
