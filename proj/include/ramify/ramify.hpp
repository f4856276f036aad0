#pragma once

#include "ramify/complex.hpp"
#include "ramify/factorization.hpp"
#include "ramify/generators.hpp"
#include "ramify/graph.hpp"
#include "ramify/lexbfs.hpp"
#include "ramify/oracle.hpp"
#include "ramify/polygon.hpp"
#include "ramify/recognition.hpp"
#include "ramify/reference.hpp"
