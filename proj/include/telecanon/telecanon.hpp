#pragma once

#include "telecanon/bases.hpp"
#include "telecanon/channels.hpp"
#include "telecanon/diagnostics.hpp"
#include "telecanon/errors.hpp"
#include "telecanon/extractor.hpp"
#include "telecanon/protocol.hpp"
#include "telecanon/qmath.hpp"
#include "telecanon/random.hpp"
#include "telecanon/report.hpp"
#include "telecanon/sweep.hpp"
