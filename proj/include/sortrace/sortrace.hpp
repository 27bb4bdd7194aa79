#pragma once

#include "sortrace/baselines.hpp"
#include "sortrace/core.hpp"
#include "sortrace/generators.hpp"
#include "sortrace/harness.hpp"
#include "sortrace/measures.hpp"
#include "sortrace/mergesorts.hpp"
#include "sortrace/quicksorts.hpp"
