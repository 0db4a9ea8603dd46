#pragma once

#include "aig.hpp"
#include "equiv.hpp"
#include "flow.hpp"
#include "io/aiger.hpp"
#include "io/blif.hpp"
#include "merge.hpp"
#include "mffc.hpp"
#include "partition/pipeline.hpp"
#include "report/qor.hpp"
#include "resynth.hpp"
#include "rl/parallel.hpp"
#include "sequential.hpp"
#include "simulate.hpp"
#include "strash.hpp"
#include "transforms/actions.hpp"
#include "truth_table.hpp"
