#pragma once

#include "ms3/catalog.hpp"
#include "ms3/equivalence.hpp"
#include "ms3/framed.hpp"
#include "ms3/io.hpp"
#include "ms3/local.hpp"
#include "ms3/model.hpp"
#include "ms3/words.hpp"
