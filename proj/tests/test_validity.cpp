#include <doctest.h>

#include <numeric>

#include "corpus.hpp"
#include "ldc/validity.hpp"

using namespace ldc;
using O = ObjectExpr;

namespace {

std::vector<std::uint64_t> seeds(int n) {
  std::vector<std::uint64_t> s(n);
  std::iota(s.begin(), s.end(), 1);
  return s;
}

} // namespace

TEST_CASE("left distributor is valid") {
  ValidityReport r = validate(corpus_circuit("left-distributor"));
  CHECK(r.valid);
  CHECK_FALSE(r.stuck.has_value());
  CHECK_FALSE(r.trace.empty());
}

TEST_CASE("reverse distributor gets stuck with at least two boxes") {
  ValidityReport r = validate(corpus_circuit("reverse-distributor"));
  CHECK_FALSE(r.valid);
  REQUIRE(r.stuck.has_value());
  CHECK(r.stuck->boxes.size() >= 2);
  CHECK(stuck_json(*r.stuck).find("boxes") != std::string::npos);
}

TEST_CASE("a wire is valid with an empty trace") {
  for (Obj t : {O::atom("A"), O::tensor(O::atom("A"), O::bot()), O::top()}) {
    ValidityReport r = validate(id_wire(t));
    CHECK(r.valid);
    CHECK(r.trace.empty());
  }
}

TEST_CASE("single tensor introduction is valid in every order") {
  CircuitBuilder b;
  auto x = b.input(O::atom("A")), y = b.input(O::atom("B"));
  b.mark_output(b.tensor_intro(x, y));
  Circuit c = b.build();
  CHECK(validate_all_orders(c, seeds(20)));
  CHECK(validate(c).valid);
}

TEST_CASE("corpus verdicts match the derivability oracle") {
  for (const auto& [name, expected] : corpus_expectations()) {
    CAPTURE(name);
    Circuit c = corpus_circuit(name);
    CHECK(validate(c).valid == expected);
    CHECK(validate_all_orders(c, seeds(20)));
    for (std::uint64_t s : seeds(20)) CHECK(validate(c, s).valid == expected);
  }
}

TEST_CASE("trace lines are JSON with rule and boxes") {
  ValidityReport r = validate(corpus_circuit("left-distributor"));
  std::string lines = trace_jsonl(r.trace);
  std::istringstream in(lines);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j.contains("rule"));
    CHECK(j.contains("boxes"));
    ++n;
  }
  CHECK(n == static_cast<int>(r.trace.size()));
}
