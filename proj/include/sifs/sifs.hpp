#pragma once

#include "sifs/address.hpp"
#include "sifs/error.hpp"
#include "sifs/expr.hpp"
#include "sifs/fibonacci.hpp"
#include "sifs/ifs.hpp"
#include "sifs/plane.hpp"
#include "sifs/plane_map.hpp"
#include "sifs/polygon.hpp"
#include "sifs/processing.hpp"
#include "sifs/quartic.hpp"
#include "sifs/rational.hpp"
#include "sifs/render.hpp"
#include "sifs/systems.hpp"
#include "sifs/verify.hpp"
