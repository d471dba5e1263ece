#include <doctest.h>

#include <sstream>

#include "test_helpers.hpp"
#include "wgcpd/io.hpp"
#include "wgcpd/types.hpp"

using namespace wgcpd;

namespace {

Observation vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return Observation::vector(std::move(v));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  FAIL("expected an error");
  return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("validate_sequence accepts well-formed vector sequences") {
  Sequence seq;
  for (int i = 0; i < 5; ++i) seq.items.push_back(vec({1.0 * i, 2.0, 3.0}));
  CHECK_NOTHROW(validate_sequence(seq));
}

TEST_CASE("validate_sequence rejects mixed dimensions") {
  Sequence seq;
  seq.items.push_back(vec({1, 2, 3}));
  seq.items.push_back(vec({1, 2, 3}));
  seq.items.push_back(vec({1, 2, 3, 4}));
  seq.items.push_back(vec({1, 2, 3}));
  CHECK(code_of([&] { validate_sequence(seq); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("validate_sequence rejects short sequences") {
  Sequence seq;
  for (int i = 0; i < 3; ++i) seq.items.push_back(vec({1, 2}));
  CHECK(code_of([&] { validate_sequence(seq); }) == ErrorCode::TooShort);
}

TEST_CASE("validate_sequence rejects mixed kinds and bad adjacencies") {
  Sequence mixed;
  mixed.items.push_back(vec({1, 2}));
  mixed.items.push_back(vec({1, 2}));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  mixed.items.push_back(Observation::graph(a));
  mixed.items.push_back(vec({1, 2}));
  CHECK(code_of([&] { validate_sequence(mixed); }) == ErrorCode::MixedKinds);

  Sequence graphs;
  Eigen::MatrixXd bad(2, 2);
  bad << 0, 1, 0, 0;  // asymmetric
  for (int i = 0; i < 4; ++i) graphs.items.push_back(Observation::graph(bad));
  CHECK(code_of([&] { validate_sequence(graphs); }) ==
        ErrorCode::AsymmetricAdjacency);
}

TEST_CASE("read_sequence parses vector CSV with optional header") {
  std::istringstream in("x,y\n1,2\n3,4\n5,6\n7,8\n");
  const Sequence seq = read_sequence(in, SequenceFormat::VectorCsv);
  CHECK(seq.n() == 4);
  CHECK(seq.dim() == 2);
  CHECK(seq.items[2].values(1) == 6.0);
}

TEST_CASE("read_sequence reports ragged rows with the line number") {
  std::istringstream in("1,2\n3,4\n5\n7,8\n");
  try {
    read_sequence(in, SequenceFormat::VectorCsv, "ragged.csv");
    FAIL("expected ParseError");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::ParseError);
    CHECK(std::string(err.what()).find("ragged.csv:3") != std::string::npos);
  }
}

TEST_CASE("read_sequence parses graph stacks") {
  std::istringstream in("0 1\n1 0\n\n0 0\n0 0\n\n0 1\n1 0\n\n0 0\n0 0\n");
  const Sequence seq = read_sequence(in, SequenceFormat::GraphStack);
  CHECK(seq.n() == 4);
  CHECK(seq.kind() == ObservationKind::Graph);
  CHECK(seq.items[0].adjacency(0, 1) == 1.0);
  CHECK(seq.items[1].adjacency(0, 1) == 0.0);
}

TEST_CASE("read_distance_matrix accepts and repairs within tolerance") {
  std::istringstream ok("0,4\n4,0\n");
  const DistanceMatrix d = read_distance_matrix(ok);
  CHECK(d(0, 1) == 4.0);

  std::istringstream nearsym("0,4\n4.0000000002,0\n");
  const DistanceMatrix repaired = read_distance_matrix(nearsym);
  CHECK(repaired(0, 1) == doctest::Approx(4.0000000001).epsilon(1e-12));
  CHECK(repaired(0, 1) == repaired(1, 0));
}

TEST_CASE("read_distance_matrix rejects bad input") {
  std::istringstream negative("0,-1\n-1,0\n");
  CHECK_THROWS_WITH_AS(read_distance_matrix(negative), doctest::Contains("negative"),
                       Error);

  std::istringstream notsquare("0,1,2\n1,0,3\n");
  try {
    read_distance_matrix(notsquare);
    FAIL("expected NotSquare");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotSquare);
  }

  std::istringstream diag("1,1\n1,0\n");
  try {
    read_distance_matrix(diag);
    FAIL("expected NonzeroDiagonal");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NonzeroDiagonal);
  }

  std::istringstream asym("0,4\n5,0\n");
  try {
    read_distance_matrix(asym);
    FAIL("expected AsymmetryBeyondTolerance");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::AsymmetryBeyondTolerance);
  }
}

TEST_CASE("loaded distance matrices satisfy the matrix invariants") {
  const DistanceMatrix d = helpers::random_distance_matrix(40, 99);
  std::stringstream buffer;
  write_distance_matrix(d, buffer);
  const DistanceMatrix back = read_distance_matrix(buffer);
  for (Index i = 0; i < back.n(); ++i) {
    CHECK(back(i, i) == 0.0);
    for (Index j = 0; j < back.n(); ++j) {
      CHECK(back(i, j) == back(j, i));
      CHECK(back(i, j) >= 0.0);
      CHECK(back(i, j) == d(i, j));  // full-precision round trip
    }
  }
}

TEST_CASE("sequence write/read round trip is the identity") {
  SUBCASE("vectors") {
    const Sequence seq = helpers::gaussian_sequence(12, 3, 7);
    std::stringstream buffer;
    write_sequence(seq, buffer);
    const Sequence back = read_sequence(buffer, SequenceFormat::VectorCsv);
    REQUIRE(back.n() == seq.n());
    for (Index i = 0; i < seq.n(); ++i) {
      CHECK(back.items[i].values == seq.items[i].values);
    }
  }
  SUBCASE("graphs") {
    RngStream rng(3);
    Sequence seq;
    for (int g = 0; g < 5; ++g) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          a(i, j) = rng.uniform01() < 0.5 ? 1.0 : 0.0;
          a(j, i) = a(i, j);
        }
      seq.items.push_back(Observation::graph(std::move(a)));
    }
    std::stringstream buffer;
    write_sequence(seq, buffer);
    const Sequence back = read_sequence(buffer, SequenceFormat::GraphStack);
    REQUIRE(back.n() == seq.n());
    for (Index i = 0; i < seq.n(); ++i) {
      CHECK(back.items[i].adjacency == seq.items[i].adjacency);
    }
  }
}

TEST_CASE("scan window clamps to [2, n-2]") {
  const ScanWindow w = ScanWindow::from_fractions(6, 0.1, 0.9);
  CHECK(w.n0 == 2);
  CHECK(w.n1 == 4);
  const ScanWindow dflt = ScanWindow::from_fractions(100, 0.1, 0.9);
  CHECK(dflt.n0 == 10);
  CHECK(dflt.n1 == 90);
  CHECK_THROWS_AS(ScanWindow::from_fractions(100, 0.0, 0.9), Error);
  CHECK_THROWS_AS(ScanWindow::from_fractions(100, 0.1, 1.0), Error);
}
