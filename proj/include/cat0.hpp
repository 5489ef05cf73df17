#pragma once

#include "cat0/boxtimes.hpp"
#include "cat0/complex.hpp"
#include "cat0/generate.hpp"
#include "cat0/geodesic.hpp"
#include "cat0/graph.hpp"
#include "cat0/io.hpp"
#include "cat0/metric.hpp"
#include "cat0/qmi.hpp"
#include "cat0/quad.hpp"
#include "cat0/selftest.hpp"
#include "cat0/witness.hpp"
