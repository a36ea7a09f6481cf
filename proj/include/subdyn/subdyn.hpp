#pragma once

#include "subdyn/alphabet.hpp"
#include "subdyn/block.hpp"
#include "subdyn/builtins.hpp"
#include "subdyn/compact_family.hpp"
#include "subdyn/constants.hpp"
#include "subdyn/diffraction.hpp"
#include "subdyn/error.hpp"
#include "subdyn/geometry.hpp"
#include "subdyn/io.hpp"
#include "subdyn/language.hpp"
#include "subdyn/perron.hpp"
#include "subdyn/rational.hpp"
#include "subdyn/schrodinger.hpp"
#include "subdyn/substitution.hpp"
#include "subdyn/svg.hpp"
