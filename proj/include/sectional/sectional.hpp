#pragma once

#include "sectional/curvature.hpp"
#include "sectional/oracle.hpp"
#include "sectional/pipeline.hpp"
#include "sectional/ratpoly.hpp"
#include "sectional/report.hpp"
#include "sectional/strongpos.hpp"
