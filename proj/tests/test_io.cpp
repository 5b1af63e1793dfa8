// Copyright 2026 The HD-SDR Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include <filesystem>

#include "hdsdr/io.hpp"
#include "test_util.hpp"

using namespace hdsdr;

TEST_CASE("read_table parses a small headed CSV") {
  const DataTable t = parse_table("f0,f1\n0,0\n1,0\n0,1\n");
  CHECK(t.rows() == 3);
  CHECK(t.cols() == 2);
  CHECK_FALSE(t.has_labels());
  CHECK(t.points(1, 0) == 1.0);
  CHECK(t.points(2, 1) == 1.0);
  CHECK(t.names == std::vector<std::string>{"f0", "f1"});
}

TEST_CASE("label column is extracted and excluded from features") {
  const DataTable t = parse_table("x,label,y\n1,a,2\n3,a,4\n5,b,6\n");
  CHECK(t.cols() == 2);
  REQUIRE(t.has_labels());
  CHECK(*t.labels == Labels{"a", "a", "b"});
  CHECK(t.points(2, 1) == 6.0);

  CsvOptions opts;
  opts.label_column = "class";
  opts.delimiter = ';';
  const DataTable u = parse_table("class;v\nq;1.5\n", opts);
  CHECK(u.cols() == 1);
  CHECK(u.labels->front() == "q");
}

TEST_CASE("read_table error contracts") {
  CHECK_THROWS_WITH_AS(parse_table("f0,f1\n1,abc\n"),
                       doctest::Contains("non-numeric"), Error);
  CHECK_THROWS_WITH_AS(parse_table("f0,f1\n1,2\n3\n"),
                       doctest::Contains("ragged"), Error);
  CHECK_THROWS_WITH_AS(parse_table(""), doctest::Contains("empty"), Error);
  CHECK_THROWS_WITH_AS(parse_table("f0\n"), doctest::Contains("empty"), Error);
  CHECK_THROWS_AS(parse_table("f0\nnan\n"), Error);
  CHECK_THROWS_AS(read_table("/nonexistent/dir/file.csv"), Error);
}

TEST_CASE("write then read reproduces values and labels") {
  test::TempDir dir("io");
  DataTable t;
  t.points = test::random_points(5, 3, 11, 1e3);
  t.points(0, 0) = 1.0 / 3.0;
  t.points(1, 1) = -2.5e-300;
  t.labels = Labels{"a", "b, quoted", "c\"q", "", "e"};
  write_table(t, dir / "t.csv");
  const DataTable r = read_table(dir / "t.csv");
  REQUIRE(r.rows() == 5);
  REQUIRE(r.cols() == 3);
  CHECK((r.points - t.points).cwiseAbs().maxCoeff() <= 1e-12);
  // Shortest round-trip formatting is exact.
  CHECK(r.points == t.points);
  CHECK(*r.labels == *t.labels);
  CHECK(r.names == default_names(3));
}

TEST_CASE("write_table to an unwritable path fails") {
  DataTable t;
  t.points = test::random_points(2, 2, 1);
  CHECK_THROWS_AS(write_table(t, "/nonexistent_dir/x/y.csv"), Error);
}

TEST_CASE("bundle round trip keeps coords, attributes and labels") {
  test::TempDir dir("bundle");
  DataTable t;
  t.points = test::random_points(4, 3, 5);
  t.labels = Labels{"a", "a", "b", "c"};
  t.names = {"fe", "mg", "si"};
  Embedding e;
  e.coords = test::random_points(4, 2, 6);
  e.method = "lmds";
  e.params = {{"seed", "7"}, {"ratio", "0.05"}};
  e.source_checksum = checksum(t);
  write_bundle(t, e, dir / "b.json");

  const Bundle b = read_bundle(dir / "b.json");
  CHECK((b.embedding.coords - e.coords).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(b.attributes == t.points);
  CHECK(b.attribute_names == t.names);
  CHECK(b.embedding.method == "lmds");
  CHECK(b.embedding.params.at("seed") == "7");
  CHECK(b.embedding.source_checksum == checksum(t));
  REQUIRE(b.labels.has_value());
  CHECK(b.attribute_table().labels == t.labels);
}

TEST_CASE("bundle without labels omits the labels key") {
  DataTable t;
  t.points = test::random_points(3, 2, 9);
  Embedding e;
  e.coords = test::random_points(3, 2, 10);
  e.method = "rp";
  const std::string text = format_bundle(make_bundle(t, e));
  CHECK(text.find("\"labels\"") == std::string::npos);
  CHECK(text.find("\"format_version\":1") != std::string::npos);
  const Bundle b = parse_bundle(text);
  CHECK_FALSE(b.labels.has_value());
  CHECK_FALSE(b.attribute_table().has_labels());
}

TEST_CASE("bundle with null labels keeps per-row nulls") {
  const Bundle b = parse_bundle(
      R"({"format_version":1,"method":"x","params":{"seed":3},)"
      R"("attribute_names":["a"],"attributes":[[1],[2]],)"
      R"("coords":[[0,0],[1,1]],"labels":["u",null]})");
  REQUIRE(b.labels.has_value());
  CHECK((*b.labels)[0] == "u");
  CHECK_FALSE((*b.labels)[1].has_value());
  CHECK(b.embedding.params.at("seed") == "3");
  CHECK_FALSE(b.attribute_table().has_labels());
}

TEST_CASE("bundle error contracts") {
  DataTable t;
  t.points = test::random_points(4, 2, 1);
  Embedding e;
  e.coords = test::random_points(3, 2, 2);
  CHECK_THROWS_WITH_AS(make_bundle(t, e), doctest::Contains("row-count"), Error);
  CHECK_THROWS_WITH_AS(parse_bundle("{\"format_version\":1,"),
                       doctest::Contains("malformed"), Error);
  CHECK_THROWS_AS(parse_bundle(R"({"format_version":9,"coords":[]})"), Error);
  CHECK_THROWS_AS(
      parse_bundle(R"({"format_version":1,"coords":[[0,0]],"attributes":[[1],[2]]})"),
      Error);
}

TEST_CASE("external embedding import checks row count") {
  test::TempDir dir("import");
  DataTable t;
  t.points = test::random_points(3, 4, 3);
  write_text(dir / "ok.csv", "x,y\n0,1\n2,3\n4,5\n");
  write_text(dir / "short.csv", "x,y\n0,1\n2,3\n");
  const Embedding e = import_embedding(dir / "ok.csv", t, "tsne");
  CHECK(e.method == "tsne");
  CHECK(e.coords(2, 1) == 5.0);
  CHECK(e.source_checksum == checksum(t));
  CHECK_THROWS_WITH_AS(import_embedding(dir / "short.csv", t),
                       doctest::Contains("row-count"), Error);
}

TEST_CASE("label CSV round trip with unassigned rows") {
  test::TempDir dir("labels");
  const LabelAssignment a{{0, "thin"}, {2, "thick"}, {3, "halo, outer"}};
  write_labels(a, 5, dir / "l.csv");
  const std::string text = read_text(dir / "l.csv");
  CHECK(text.rfind("row_index,label\n0,thin\n1,\n", 0) == 0);
  CHECK(read_labels(dir / "l.csv") == a);
  CHECK_THROWS_AS(write_labels({{7, "x"}}, 5, dir / "bad.csv"), Error);
  CHECK_THROWS_AS(parse_labels("row_index,label\n1,a\n1,b\n"), Error);
  CHECK_THROWS_AS(parse_labels("idx,label\n"), Error);
  CHECK(labels_from_assignment({{0, "a"}, {1, "b"}}, 2) == Labels{"a", "b"});
  CHECK_THROWS_WITH_AS(labels_from_assignment(a, 5),
                       doctest::Contains("missing labels"), Error);
}

TEST_CASE("checksum depends on values and labels") {
  DataTable t;
  t.points = test::random_points(3, 2, 4);
  const std::string base = checksum(t);
  CHECK(base.size() == 16);
  DataTable u = t;
  u.points(1, 1) += 1e-9;
  CHECK(checksum(u) != base);
  u = t;
  u.labels = Labels{"a", "b", "c"};
  CHECK(checksum(u) != base);
  CHECK(checksum(t) == base);
}
