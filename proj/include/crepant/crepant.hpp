#pragma once

// Umbrella header: the whole library.

#include "crepant/bundle.hpp"
#include "crepant/errors.hpp"
#include "crepant/fixtures.hpp"
#include "crepant/graded_algebra.hpp"
#include "crepant/isomorphism.hpp"
#include "crepant/maps.hpp"
#include "crepant/matrix.hpp"
#include "crepant/pipeline.hpp"
#include "crepant/quantum_correction.hpp"
#include "crepant/scalars.hpp"
#include "crepant/sector_model.hpp"
#include "crepant/smith.hpp"
