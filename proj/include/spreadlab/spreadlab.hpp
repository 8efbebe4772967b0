#pragma once

#include "bigint.hpp"
#include "bitset.hpp"
#include "chartrick.hpp"
#include "classes.hpp"
#include "errors.hpp"
#include "groupdata.hpp"
#include "groupindex.hpp"
#include "permutation.hpp"
#include "spreadengine.hpp"
#include "stabchain.hpp"
#include "supportnet.hpp"
#include "cli.hpp"
