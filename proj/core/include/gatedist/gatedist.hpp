#pragma once

#include "gatedist/classical.hpp"
#include "gatedist/errors.hpp"
#include "gatedist/gates.hpp"
#include "gatedist/geometry.hpp"
#include "gatedist/linalg.hpp"
#include "gatedist/protocol.hpp"
#include "gatedist/random.hpp"
#include "gatedist/states.hpp"
