#include "fixtures.hpp"

namespace purfit::testing {

SchemaPtr t1_schema() {
  return Schema::make({"Y", {"0", "1"}}, {{"S", {"a", "b"}}}, {{"X", {"u", "v"}}});
}

JointTable t1() {
  // Row-major (Y, S, X): (0,a,u), (0,a,v), (0,b,u), (0,b,v), (1,a,u), ...
  return JointTable(t1_schema(), {0.05, 0.05, 0.2, 0.2, 0.2, 0.2, 0.05, 0.05});
}

SchemaPtr small_schema(std::size_t x_cells) {
  std::vector<std::string> xs;
  for (std::size_t i = 0; i < x_cells; ++i) xs.push_back("x" + std::to_string(i));
  return Schema::make({"Y", {"0", "1"}}, {{"S", {"a", "b"}}}, {{"X", std::move(xs)}});
}

JointTable random_positive_table(const SchemaPtr& schema, std::mt19937_64& gen,
                                 double floor) {
  std::vector<double> v(schema->cell_count());
  double total = 0.0;
  for (auto& x : v) {
    x = floor + static_cast<double>(gen() >> 11) * 0x1.0p-53;
    total += x;
  }
  for (auto& x : v) x /= total;
  return JointTable(schema, std::move(v));
}

CountTable random_count_table(const SchemaPtr& schema, std::mt19937_64& gen,
                              std::uint64_t max_per_cell) {
  std::vector<std::uint64_t> c(schema->cell_count());
  std::uint64_t total = 0;
  do {
    total = 0;
    for (auto& x : c) {
      x = gen() % (max_per_cell + 1);
      total += x;
    }
  } while (total == 0);
  return CountTable(schema, std::move(c));
}

}  // namespace purfit::testing
