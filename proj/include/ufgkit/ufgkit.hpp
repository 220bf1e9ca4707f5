#pragma once

#include "ufgkit/bits.hpp"
#include "ufgkit/connectedness.hpp"
#include "ufgkit/context.hpp"
#include "ufgkit/error.hpp"
#include "ufgkit/ground_set.hpp"
#include "ufgkit/interval.hpp"
#include "ufgkit/io.hpp"
#include "ufgkit/relation.hpp"
#include "ufgkit/ufg.hpp"
