#include <doctest.h>

#include "factnet/composition.hpp"
#include "factnet/errors.hpp"
#include "factnet/net.hpp"

using namespace factnet;

namespace {

FactNet two_sg_shape() {
  return FactNet()
      .add_system("S")
      .add_system("SGz")
      .add_system("SGx")
      .add_fact("S", "SGz", "0")
      .add_fact("S", "SGz", "1")
      .add_fact("S", "SGx", "+")
      .add_fact("S", "SGx", "-");
}

}  // namespace

TEST_CASE("add_system basics") {
  FactNet net;
  net = net.add_system("S");
  CHECK(net.systems().size() == 1);
  CHECK_THROWS_WITH_AS(net.add_system("S"), doctest::Contains("already exists"), Error);
  CHECK_THROWS_AS(net.add_system(""), Error);

  // five systems of the opening diagram
  FactNet five;
  for (const char* name : {"A", "B", "C", "D", "E"}) five = five.add_system(name);
  CHECK(five.systems().size() == 5);
}

TEST_CASE("add_fact populates fact-sets and neighborhoods") {
  FactNet net = two_sg_shape();
  CHECK(net.fact_set("SGz", "S").size() == 2);
  CHECK(net.fact_set("S", "SGz") == net.fact_set("SGz", "S"));
  CHECK(net.neighborhood("S") == std::vector<std::string>{"SGx", "SGz"});
  CHECK(net.neighborhood("SGz") == std::vector<std::string>{"S"});
  CHECK(net.fact_set("SGz", "SGx").empty());
  CHECK(net.incident("S").size() == 4);

  CHECK_THROWS_AS(net.add_fact("S", "nowhere", "f"), Error);
  CHECK_THROWS_AS(net.add_fact("S", "SGz", "0"), Error);
}

TEST_CASE("self facts need the convention") {
  FactNet net = FactNet().add_system("A").add_system("B").add_fact("A", "B", "ab");
  CHECK_THROWS_AS(net.add_fact("A", "A", "self"), Error);
  FactNet with = enable_self_facts(net);
  CHECK(with.fact_set("A", "A").size() == 1);
  CHECK(with.fact_set("B", "B").size() == 1);
  // idempotent
  CHECK(enable_self_facts(with) == with);
  // at most one self-fact
  CHECK_THROWS_AS(with.add_fact("A", "A", "again"), Error);
  // the self system counts as its own neighbor
  auto hood = with.neighborhood("A");
  CHECK(std::find(hood.begin(), hood.end(), "A") != hood.end());
}

TEST_CASE("star shape") {
  FactNet net = two_sg_shape();
  CHECK(net.is_star_shaped("S"));
  CHECK_FALSE(net.is_star_shaped("SGz"));

  FactNet triangle = FactNet()
                         .add_system("A")
                         .add_system("B")
                         .add_system("C")
                         .add_fact("A", "B", "ab")
                         .add_fact("B", "C", "bc")
                         .add_fact("A", "C", "ac");
  CHECK_FALSE(triangle.is_star_shaped("A"));
  CHECK_FALSE(triangle.is_star_shaped("B"));
  CHECK_FALSE(triangle.is_star_shaped("C"));

  CHECK(FactNet().add_system("lonely").is_star_shaped("lonely"));
}

TEST_CASE("construction order independence") {
  FactNet a = two_sg_shape();
  FactNet b = FactNet()
                  .add_system("SGx")
                  .add_system("SGz")
                  .add_system("S")
                  .add_fact("SGx", "S", "-")
                  .add_fact("S", "SGx", "+")
                  .add_fact("SGz", "S", "1")
                  .add_fact("S", "SGz", "0");
  CHECK(a == b);

  FactNetBuilder builder;
  builder.add_system("SGz").add_system("S").add_system("SGx");
  builder.add_fact("S", "SGx", "+").add_fact("S", "SGx", "-");
  builder.add_fact("S", "SGz", "0").add_fact("S", "SGz", "1");
  CHECK(builder.build() == a);
}

TEST_CASE("incident counts match fact-set totals") {
  FactNet net = two_sg_shape().add_system("SGy").add_fact("S", "SGy", "+i").add_fact(
      "S", "SGy", "-i");
  std::size_t total = 0;
  for (const auto& n : net.neighborhood("S")) total += net.fact_set("S", n).size();
  CHECK(net.incident("S").size() == total);

  // self-facts count once
  FactNet with_self = enable_self_facts(net);
  std::size_t self_total = 0;
  for (const auto& n : with_self.neighborhood("S"))
    self_total += with_self.fact_set("S", n).size();
  CHECK(with_self.incident("S").size() == self_total);
  CHECK(with_self.incident("S").size() == total + 1);
}

TEST_CASE("fact-set weights") {
  FactNet net = two_sg_shape();
  CHECK(net.fact_set_weight("S", "SGz") == 1.0);
  FactNet weighted = net.with_fact_set_weight("S", "SGz", 0.25);
  CHECK(weighted.fact_set_weight("SGz", "S") == 0.25);
  CHECK_FALSE(weighted == net);
  CHECK_THROWS_AS(net.with_fact_set_weight("S", "SGz", -1.0), Error);
}
