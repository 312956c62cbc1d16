#pragma once

// Umbrella header for the parabolic character variety toolkit.

#include "charvar/boundary.hpp"
#include "charvar/elements.hpp"
#include "charvar/errors.hpp"
#include "charvar/generic_reduction.hpp"
#include "charvar/json_io.hpp"
#include "charvar/kempf_ness.hpp"
#include "charvar/matrix.hpp"
#include "charvar/numeric.hpp"
#include "charvar/parabolic.hpp"
#include "charvar/parallel.hpp"
#include "charvar/random.hpp"
#include "charvar/retraction.hpp"
#include "charvar/trace_coords.hpp"
