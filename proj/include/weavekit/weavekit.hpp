#pragma once

// Umbrella header for the toolkit. The CLI layer (weavekit/cli.hpp) is
// kept separate so library users do not pull in the argument parser.

#include "weavekit/errors.hpp"
#include "weavekit/settings.hpp"
#include "weavekit/linalg.hpp"
#include "weavekit/rng.hpp"
#include "weavekit/frames.hpp"
#include "weavekit/gframes.hpp"
#include "weavekit/weaving.hpp"
#include "weavekit/theorems.hpp"
#include "weavekit/io.hpp"
