// SPDX-License-Identifier: Apache-2.0
#ifndef IMHERE_IMHERE_HPP
#define IMHERE_IMHERE_HPP

#include "imhere/analysis.hpp"
#include "imhere/core.hpp"
#include "imhere/engine.hpp"
#include "imhere/focus.hpp"
#include "imhere/geometry.hpp"
#include "imhere/group.hpp"
#include "imhere/params.hpp"
#include "imhere/perception.hpp"
#include "imhere/relation.hpp"
#include "imhere/render.hpp"
#include "imhere/scenario.hpp"
#include "imhere/signal.hpp"
#include "imhere/strategy.hpp"
#include "imhere/trace.hpp"
#include "imhere/worldgen.hpp"

#endif  // IMHERE_IMHERE_HPP
