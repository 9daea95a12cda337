#pragma once

#include "heffter/array_io.hpp"
#include "heffter/bounds.hpp"
#include "heffter/combinatorics.hpp"
#include "heffter/embedding.hpp"
#include "heffter/error.hpp"
#include "heffter/families.hpp"
#include "heffter/heffter_array.hpp"
#include "heffter/hypothesis.hpp"
#include "heffter/iso.hpp"
#include "heffter/json_io.hpp"
#include "heffter/knight.hpp"
#include "heffter/modular.hpp"
#include "heffter/orientation.hpp"
#include "heffter/parallel.hpp"
#include "heffter/permutation.hpp"
#include "heffter/pfarray.hpp"
#include "heffter/search.hpp"
