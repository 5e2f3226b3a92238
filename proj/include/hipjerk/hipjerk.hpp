#pragma once

#include "hipjerk/acquisition.hpp"
#include "hipjerk/commands.hpp"
#include "hipjerk/error.hpp"
#include "hipjerk/euler.hpp"
#include "hipjerk/jerk_index.hpp"
#include "hipjerk/session.hpp"
#include "hipjerk/so3.hpp"
#include "hipjerk/synth.hpp"
#include "hipjerk/wire_format.hpp"
