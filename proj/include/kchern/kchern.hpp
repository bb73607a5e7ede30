#pragma once

#include "kchern/error.hpp"
#include "kchern/rational.hpp"
#include "kchern/poly.hpp"
#include "kchern/linalg.hpp"
#include "kchern/word.hpp"
#include "kchern/algebra.hpp"
#include "kchern/uform.hpp"
#include "kchern/abelian.hpp"
#include "kchern/matrix.hpp"
#include "kchern/tform.hpp"
#include "kchern/connections.hpp"
#include "kchern/transgression.hpp"
#include "kchern/io.hpp"
#include "kchern/report.hpp"
#include "kchern/khat.hpp"
#include "kchern/fixtures.hpp"
#include "kchern/suites.hpp"
