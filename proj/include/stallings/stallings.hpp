#pragma once

#include "stallings/error.hpp"
#include "stallings/extensions.hpp"
#include "stallings/graph.hpp"
#include "stallings/intersect.hpp"
#include "stallings/io.hpp"
#include "stallings/subgroup.hpp"
#include "stallings/whitehead.hpp"
#include "stallings/words.hpp"
