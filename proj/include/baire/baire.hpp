#pragma once

// Everything except JSON serialization (baire/json_io.hpp), which needs the
// nlohmann single header on the include path.

#include "baire/core.hpp"
#include "baire/classes.hpp"
#include "baire/crrel.hpp"
#include "baire/codes.hpp"
#include "baire/encode.hpp"
#include "baire/decode.hpp"
#include "baire/reach.hpp"
#include "baire/hechler.hpp"
#include "baire/games.hpp"
#include "baire/gen.hpp"
