#pragma once

#include "steal/choose_side.hpp"
#include "steal/circuit.hpp"
#include "steal/engine.hpp"
#include "steal/errors.hpp"
#include "steal/hex.hpp"
#include "steal/makermaker.hpp"
#include "steal/outcome.hpp"
#include "steal/poset.hpp"
#include "steal/reduction.hpp"
#include "steal/smm_io.hpp"
