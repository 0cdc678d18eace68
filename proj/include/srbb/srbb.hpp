#pragma once

#include "srbb/approximate.hpp"
#include "srbb/basis.hpp"
#include "srbb/circuit.hpp"
#include "srbb/circuits.hpp"
#include "srbb/grouping.hpp"
#include "srbb/index_maps.hpp"
#include "srbb/io.hpp"
#include "srbb/lift.hpp"
#include "srbb/mzyz.hpp"
#include "srbb/nelder_mead.hpp"
#include "srbb/objective.hpp"
#include "srbb/partition.hpp"
#include "srbb/qasm.hpp"
#include "srbb/simulator.hpp"
#include "srbb/two_level.hpp"
#include "srbb/types.hpp"
#include "srbb/walsh.hpp"
