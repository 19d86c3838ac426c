#pragma once

#include "spanforge/error.hpp"
#include "spanforge/finset.hpp"
#include "spanforge/span.hpp"
#include "spanforge/report.hpp"
#include "spanforge/finite_category.hpp"
#include "spanforge/internal.hpp"
#include "spanforge/lex.hpp"
#include "spanforge/catalog.hpp"
#include "spanforge/feistel.hpp"
#include "spanforge/fib.hpp"
