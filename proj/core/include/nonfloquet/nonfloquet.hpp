#pragma once

#include "nonfloquet/deformation.hpp"
#include "nonfloquet/diagnostics.hpp"
#include "nonfloquet/errors.hpp"
#include "nonfloquet/evolution.hpp"
#include "nonfloquet/freqspace.hpp"
#include "nonfloquet/io.hpp"
#include "nonfloquet/models.hpp"
#include "nonfloquet/operator_core.hpp"
#include "nonfloquet/parallel.hpp"
#include "nonfloquet/topology.hpp"
