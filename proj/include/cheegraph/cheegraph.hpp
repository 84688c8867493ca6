#pragma once

// Umbrella header: intrinsic-metric isoperimetric constants and Cheeger-type
// spectral bounds for weighted graph Laplacians.

#include "cheegraph/certificates.hpp"
#include "cheegraph/curvature.hpp"
#include "cheegraph/errors.hpp"
#include "cheegraph/families.hpp"
#include "cheegraph/graph.hpp"
#include "cheegraph/growth.hpp"
#include "cheegraph/io.hpp"
#include "cheegraph/isoperimetry.hpp"
#include "cheegraph/metrics.hpp"
#include "cheegraph/potentials.hpp"
#include "cheegraph/spectral.hpp"
#include "cheegraph/suites.hpp"
#include "cheegraph/verification.hpp"
