#pragma once

#include <random>
#include <vector>

#include "purfit/schema.hpp"
#include "purfit/tables.hpp"

namespace purfit::testing {

// Canonical 8-cell table over Y={0,1}, S={a,b}, X={u,v}:
// f(y,s,x) = g(y,s) * 0.5 with g(1,a)=0.4, g(1,b)=0.1, g(0,a)=0.1, g(0,b)=0.4.
// Strongly Y-S biased (p(1|a)=0.8 vs p(1|b)=0.2) with a closed-form PUR
// projection (the uniform table).
SchemaPtr t1_schema();
JointTable t1();

// Schema with |Y|=2, |S|=2, |X|=x_cells (one protected, one unprotected).
SchemaPtr small_schema(std::size_t x_cells);

// Strictly positive random distribution over `schema`.
JointTable random_positive_table(const SchemaPtr& schema, std::mt19937_64& gen,
                                 double floor = 0.05);

// Random count table with zero cells allowed.
CountTable random_count_table(const SchemaPtr& schema, std::mt19937_64& gen,
                              std::uint64_t max_per_cell = 6);

}  // namespace purfit::testing
