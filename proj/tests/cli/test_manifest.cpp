#include "doctest.h"

#include "maskkit/cli/manifest.hpp"
#include "maskkit/error.hpp"

using maskkit::cli::Manifest;

TEST_CASE("manifest line keeps insertion order and replaces in place") {
  Manifest m("gen");
  m.set("pattern", "mesh");
  m.set("seed", "1");
  m.set("ratio", "0.7");
  m.set("seed", "42");
  CHECK(m.line() == "maskkit command=gen pattern=mesh seed=42 ratio=0.7");
  CHECK(m.get("seed") == "42");
  CHECK_FALSE(m.get("side").has_value());
}

TEST_CASE("values with spaces and percent signs survive a round trip") {
  Manifest m("apply");
  m.set("image", "my dir/100% scan.pgm");
  const auto line = m.line();
  CHECK(line == "maskkit command=apply image=my%20dir/100%25%20scan.pgm");
  const auto back = Manifest::parse(line);
  REQUIRE(back.has_value());
  CHECK(back->get("image") == "my dir/100% scan.pgm");
}

TEST_CASE("find skips ordinary comments") {
  const std::string body =
      "P1\n# made by hand\n# maskkit command=gen pattern=random grid=3x3 ratio=0.5 seed=7\n3 3\n";
  const auto m = Manifest::find(body);
  REQUIRE(m.has_value());
  CHECK(m->command() == "gen");
  CHECK(m->get("grid") == "3x3");
  CHECK_FALSE(Manifest::find("P1\n# nothing here\n1 1\n0\n").has_value());
}

TEST_CASE("to_args maps keys to flags and drops metadata") {
  Manifest m("augment.mixup");
  m.set("a", "x.pgm");
  m.set("label_a", "0");
  m.set("version", "9.9.9");
  m.set("rng", "whatever");
  m.set("timestamp", "17");
  const std::vector<std::string> expected{"augment", "mixup", "--a", "x.pgm", "--label-a", "0", "--timestamp", "17"};
  CHECK(m.to_args() == expected);
}

TEST_CASE("malformed manifests are rejected") {
  CHECK_FALSE(Manifest::parse("maskkit pattern=mesh").has_value());
  CHECK_FALSE(Manifest::parse("other command=gen").has_value());
  CHECK_THROWS_AS(Manifest::parse("maskkit command=gen novalue"), maskkit::Error);
  CHECK_THROWS_AS(Manifest::parse("maskkit command=gen a=%2"), maskkit::Error);
  CHECK_THROWS_AS(Manifest::parse("maskkit command=gen a=%zz"), maskkit::Error);
}
