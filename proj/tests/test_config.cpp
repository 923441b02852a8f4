#include <doctest.h>

#include <string>

#include "aledg/config.hpp"
#include "aledg/error.hpp"

using namespace aledg;

namespace {

// Message of the Error thrown by parsing `text`, or "" if it parsed.
std::string failure(const std::string& text, const std::vector<std::string>& ov = {}) {
  try {
    parse_config(text, "t.ini", ov);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal config takes experiment defaults") {
  const RunConfig c = parse_config("[run]\nexperiment = advection\n", "t.ini");
  CHECK(c.experiment == Experiment::Advection);
  CHECK(c.degrees == std::vector<int>{1, 2, 3});
  REQUIRE(c.integrators.size() == 1);
  CHECK(c.integrators[0] == RKId::TVDRK3);
  CHECK(c.cfl == doctest::Approx(0.9));
  CHECK(c.motion == MotionKind::Sinusoidal);
  CHECK(c.diagonal == Diagonal::LowerRightUpperLeft);

  for (const char* name : {"burgers", "euler_plane", "euler_vortex"}) {
    const RunConfig d = parse_config(std::string("[run]\nexperiment = ") + name, "t.ini");
    REQUIRE(d.integrators.size() == 1);
    CHECK(d.integrators[0] == RKId::SSPRK54);
  }
  const RunConfig empty = parse_config("# nothing\n", "t.ini");
  CHECK(empty.experiment == Experiment::Advection);
}

TEST_CASE("values parse") {
  const RunConfig c = parse_config(
      "[run]\nexperiment = burgers ; inline comment\n"
      "[discretization]\nk = 1, 2\nh0 = 1/2, 1/4, 0.125\ndiagonal = ll_ur\n"
      "[time]\nintegrator = tvdrk2, tvdrk3\nt_final = 0.2\n"
      "[limiter]\nbound_preserving = true\nwave_speed = global\n",
      "t.ini");
  CHECK(c.h0s == std::vector<double>{0.5, 0.25, 0.125});
  CHECK(c.diagonal == Diagonal::LowerLeftUpperRight);
  CHECK(c.integrators == std::vector<RKId>{RKId::TVDRK2, RKId::TVDRK3});
  CHECK(c.t_final == doctest::Approx(0.2));
  CHECK(c.bp_limiter);
  CHECK(c.wave_speed == WaveSpeedMode::Global);
  REQUIRE(c.thresholds.bound_margin_min.has_value());
}

TEST_CASE("k = 4 is rejected with its line") {
  const std::string msg = failure("[run]\nexperiment = advection\n\n[discretization]\nk = 2, 4\n");
  CHECK(contains(msg, "t.ini:5"));
  CHECK(contains(msg, "k = 4"));
  CHECK(contains(failure("[discretization]\nk = 0\n"), "t.ini:2"));
}

TEST_CASE("forward Euler is refused outside constant-state runs") {
  const std::string msg = failure("[run]\nexperiment = advection\n[time]\nintegrator = euler_fwd\n");
  CHECK(contains(msg, "t.ini:4"));
  CHECK(contains(msg, "geometric conservation law"));
  CHECK(contains(failure("[run]\nexperiment = burgers\n", {"time.integrator=euler_fwd"}),
                 "--set"));
  CHECK(failure("[run]\nexperiment = constant_gcl\n[time]\nintegrator = euler_fwd\n").empty());
  CHECK(failure("[run]\nexperiment = two_mesh_gcl\n").empty());
}

TEST_CASE("structural errors carry line numbers") {
  CHECK(contains(failure("[run]\nexperiment = advection\n[bogus]\n"), "t.ini:3"));
  CHECK(contains(failure("[run]\ncolour = red\n"), "t.ini:2"));
  CHECK(contains(failure("[run]\ncolour = red\n"), "unknown key"));
  const std::string dup = failure("[time]\ncfl = 0.5\n\n[time]\ncfl = 0.4\n");
  CHECK(contains(dup, "t.ini:5"));
  CHECK(contains(dup, "t.ini:2"));
  CHECK(contains(failure("experiment = advection\n"), "t.ini:1"));
  CHECK(contains(failure("[run\n"), "t.ini:1"));
  CHECK(contains(failure("[time]\ncfl\n"), "t.ini:2"));
  CHECK(contains(failure("[time]\ncfl = 1.5\n"), "t.ini:2"));
  CHECK(contains(failure("[time]\nt_final = abc\n"), "t.ini:2"));
  CHECK(contains(failure("[run]\nexperiment = nope\n"), "t.ini:1") == false);
  CHECK(contains(failure("[run]\nexperiment = nope\n"), "t.ini:2"));
}

TEST_CASE("cross-key checks") {
  CHECK(contains(failure("[run]\nexperiment = euler_plane\n[limiter]\nbound_preserving = true\n"),
                 "t.ini:4"));
  CHECK(contains(failure("[run]\nexperiment = advection\n[limiter]\nslope = true\n"),
                 "t.ini:4"));
  CHECK(contains(failure("[run]\nexperiment = advection\n[mesh]\nmotion = two_mesh\n"),
                 "t.ini:4"));
  CHECK(contains(failure("[run]\nexperiment = two_mesh_gcl\n[discretization]\nh0 = 0.3\n"),
                 "t.ini:4"));
  CHECK(failure("[run]\nexperiment = two_mesh_gcl\n[discretization]\nh0 = 1/2, 1/4\n").empty());
}

TEST_CASE("overrides apply after the file") {
  const RunConfig c = parse_config("[time]\ncfl = 0.5\n", "t.ini",
                                   {"time.cfl=0.25", "discretization.k=2"});
  CHECK(c.cfl == doctest::Approx(0.25));
  CHECK(c.degrees == std::vector<int>{2});
  CHECK(contains(failure("", {"nodot=1"}), "override"));
  CHECK(contains(failure("", {"time.cfl"}), "override"));
  CHECK(contains(failure("", {"time.nope=1"}), "--set time.nope=1"));
}

TEST_CASE("echo lists every key with its effective value") {
  const RunConfig c = parse_config("[time]\ncfl = 0.5\n", "t.ini");
  CHECK(c.echo.size() == 31);
  bool found = false;
  for (const auto& [key, value] : c.echo) {
    CHECK_FALSE(key.empty());
    if (key == "time.cfl") {
      found = true;
      CHECK(std::stod(value) == doctest::Approx(0.5));
    }
  }
  CHECK(found);
  // the echo parses back to the same configuration
  std::string text, section;
  for (const auto& [key, value] : c.echo) {
    const auto dot = key.find('.');
    if (key.substr(0, dot) != section) {
      section = key.substr(0, dot);
      text += "[" + section + "]\n";
    }
    if (!value.empty()) text += key.substr(dot + 1) + " = " + value + "\n";
  }
  const RunConfig back = parse_config(text, "echo.ini");
  CHECK(back.echo == c.echo);
}
