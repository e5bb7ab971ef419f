#pragma once

#include "sunfree/bounds.hpp"
#include "sunfree/construct.hpp"
#include "sunfree/family.hpp"
#include "sunfree/mask.hpp"
#include "sunfree/optimize.hpp"
#include "sunfree/partition.hpp"
#include "sunfree/petal_graph.hpp"
#include "sunfree/search.hpp"
#include "sunfree/sunflower.hpp"
