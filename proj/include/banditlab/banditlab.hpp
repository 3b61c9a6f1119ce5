#pragma once

// Umbrella include for the whole toolkit.

#include "banditlab/core.hpp"
#include "banditlab/encoders.hpp"
#include "banditlab/environment.hpp"
#include "banditlab/harness.hpp"
#include "banditlab/metrics.hpp"
#include "banditlab/policies.hpp"
