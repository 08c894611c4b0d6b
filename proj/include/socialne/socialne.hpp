#pragma once

#include "socialne/commands.hpp"
#include "socialne/diagnostics.hpp"
#include "socialne/digraph.hpp"
#include "socialne/edge_list.hpp"
#include "socialne/errors.hpp"
#include "socialne/game.hpp"
#include "socialne/gossip.hpp"
#include "socialne/oracle.hpp"
#include "socialne/reconstruct.hpp"
#include "socialne/scenario.hpp"
#include "socialne/step_schedule.hpp"
