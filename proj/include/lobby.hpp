#pragma once

#include "lobby/analysis.hpp"
#include "lobby/best_response.hpp"
#include "lobby/curve.hpp"
#include "lobby/equilibrium.hpp"
#include "lobby/errors.hpp"
#include "lobby/model.hpp"
#include "lobby/numeric.hpp"
#include "lobby/oracle.hpp"
#include "lobby/public_persuasion.hpp"
#include "lobby/report.hpp"
