#pragma once

#include "analysis.hpp"
#include "constructions.hpp"
#include "depth.hpp"
#include "errors.hpp"
#include "instances.hpp"
#include "io.hpp"
#include "metric.hpp"
#include "oracle.hpp"
#include "ratio.hpp"
