#pragma once

#include "dtlab/bundle_io.hpp"
#include "dtlab/christofides.hpp"
#include "dtlab/doubletree.hpp"
#include "dtlab/error.hpp"
#include "dtlab/experiment.hpp"
#include "dtlab/instances.hpp"
#include "dtlab/metric.hpp"
#include "dtlab/oracle.hpp"
#include "dtlab/spanning.hpp"
#include "dtlab/svg.hpp"
#include "dtlab/tour.hpp"
#include "dtlab/tsplib.hpp"
