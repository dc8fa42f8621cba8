#pragma once

#include "hyperrel/alg1.hpp"
#include "hyperrel/alg2.hpp"
#include "hyperrel/common.hpp"
#include "hyperrel/dnf.hpp"
#include "hyperrel/exact.hpp"
#include "hyperrel/hypergraph.hpp"
#include "hyperrel/io.hpp"
#include "hyperrel/mincut.hpp"
#include "hyperrel/stats.hpp"
