#pragma once

#include "oligoplan/core.hpp"
#include "oligoplan/gantt.hpp"
#include "oligoplan/io.hpp"
#include "oligoplan/maskgen.hpp"
#include "oligoplan/oracles.hpp"
#include "oligoplan/pipeline.hpp"
#include "oligoplan/rectcover.hpp"
#include "oligoplan/supersequence.hpp"
