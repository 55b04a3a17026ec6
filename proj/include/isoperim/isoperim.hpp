#pragma once

#include "isoperim/trig_series.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/curve_model.hpp"
#include "isoperim/minimax.hpp"
#include "isoperim/quantities.hpp"
#include "isoperim/oracle.hpp"
#include "isoperim/inequality.hpp"
#include "isoperim/stability.hpp"
#include "isoperim/io.hpp"
