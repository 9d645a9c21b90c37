#pragma once

#include "khcover/bigint.hpp"
#include "khcover/budget.hpp"
#include "khcover/conventions.hpp"
#include "khcover/diagram.hpp"
#include "khcover/dinv.hpp"
#include "khcover/errors.hpp"
#include "khcover/goeritz.hpp"
#include "khcover/homalg.hpp"
#include "khcover/khovanov.hpp"
#include "khcover/laurent.hpp"
#include "khcover/linalg/matf2.hpp"
#include "khcover/linalg/matz.hpp"
#include "khcover/parallel.hpp"
#include "khcover/quasialt.hpp"
