#pragma once

#include "codec.hpp"
#include "constructions.hpp"
#include "exact.hpp"
#include "io.hpp"
#include "labeling.hpp"
#include "matrix.hpp"
#include "neat.hpp"
#include "trigraph.hpp"
