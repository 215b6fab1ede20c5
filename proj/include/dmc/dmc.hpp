#pragma once

#include "dmc/bigint.hpp"
#include "dmc/complex.hpp"
#include "dmc/error.hpp"
#include "dmc/graph_morse.hpp"
#include "dmc/hasse.hpp"
#include "dmc/homology.hpp"
#include "dmc/io.hpp"
#include "dmc/morse.hpp"
#include "dmc/morse_complex.hpp"
#include "dmc/simplex_enum.hpp"
