#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "acsim/grid.hpp"
#include "acsim/io.hpp"

using namespace acsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "acsim-io-test";
    fs::create_directories(d);
    return d;
}

Trajectory make_trajectory(const Grid& g, double scale) {
    Trajectory tr;
    tr.grid = g;
    for (int k = 0; k <= g.nt; ++k) {
        Field f1 = Field::zeros(g.nx, g.t(k));
        Field f2 = Field::zeros(g.nx, g.t(k));
        for (int j = 0; j < g.nx; ++j) {
            f1.values[static_cast<size_t>(j)] =
                scale * std::sin(0.7 * j + 1.3 * k) + 1.0 / 3.0;
            f2.values[static_cast<size_t>(j)] =
                -scale * std::cos(0.4 * j - 0.9 * k) * std::exp(-0.01 * j);
        }
        tr.m1.push_back(f1);
        tr.m2.push_back(f2);
    }
    return tr;
}

std::string file_bytes(const fs::path& p) {
    std::ifstream s(p, std::ios::binary);
    REQUIRE(s.good());
    return std::string(std::istreambuf_iterator<char>(s),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("trajectory binary round trip: header fields and bit-exact samples") {
    const Grid g(3.5, 7, 0.125, 3);
    const Trajectory tr = make_trajectory(g, 0.8);
    const fs::path p = scratch_dir() / "roundtrip.bin";
    write_trajectory_binary(p.string(), tr, 987654321098765ULL);

    const TrajectoryFile back = read_trajectory_binary(p.string());
    CHECK(back.seed == 987654321098765ULL);
    CHECK(back.grid.nx == g.nx);
    CHECK(back.grid.nt == g.nt);
    CHECK(back.grid.dx == g.dx);
    CHECK(back.grid.dt == g.dt);
    CHECK(std::abs(back.grid.half_width - g.half_width) <=
          1e-12 * g.half_width);

    REQUIRE(back.trajectory.m1.size() == tr.m1.size());
    REQUIRE(back.trajectory.m2.size() == tr.m2.size());
    for (size_t k = 0; k < tr.m1.size(); ++k) {
        CHECK(back.trajectory.m1[k].values == tr.m1[k].values);  // bitwise
        CHECK(back.trajectory.m2[k].values == tr.m2[k].values);
        CHECK(back.trajectory.m1[k].time_label == tr.m1[k].time_label);
    }
}

TEST_CASE("writing the same trajectory twice yields identical bytes") {
    const Grid g(2.0, 10, 0.05, 4);
    const Trajectory tr = make_trajectory(g, 1.7);
    const fs::path a = scratch_dir() / "dup-a.bin";
    const fs::path b = scratch_dir() / "dup-b.bin";
    write_trajectory_binary(a.string(), tr, 42);
    write_trajectory_binary(b.string(), tr, 42);
    const std::string ba = file_bytes(a), bb = file_bytes(b);
    CHECK(ba.size() == 40 + 2 * 5 * 10 * 8);
    CHECK(ba == bb);
}

TEST_CASE("a rewrite atomically replaces the previous artifact") {
    const Grid g(2.0, 8, 0.1, 2);
    const fs::path p = scratch_dir() / "rewrite.bin";
    write_trajectory_binary(p.string(), make_trajectory(g, 1.0), 1);
    const Trajectory second = make_trajectory(g, -3.5);
    write_trajectory_binary(p.string(), second, 2);

    const TrajectoryFile back = read_trajectory_binary(p.string());
    CHECK(back.seed == 2);
    CHECK(back.trajectory.m1[0].values == second.m1[0].values);
    CHECK(!fs::exists(p.string() + ".tmp"));  // temp file cleaned up
}

TEST_CASE("header layout is little-endian u64/f64 at fixed offsets") {
    const Grid g(1.0, 4, 0.25, 2);
    const Trajectory tr = make_trajectory(g, 0.5);
    const fs::path p = scratch_dir() / "layout.bin";
    write_trajectory_binary(p.string(), tr, 0x0102030405060708ULL);
    const std::string bytes = file_bytes(p);
    REQUIRE(bytes.size() >= 40);

    std::uint64_t nx = 0, nt = 0, seed = 0;
    double dx = 0.0, dt = 0.0;
    std::memcpy(&nx, bytes.data(), 8);
    std::memcpy(&nt, bytes.data() + 8, 8);
    std::memcpy(&dx, bytes.data() + 16, 8);
    std::memcpy(&dt, bytes.data() + 24, 8);
    std::memcpy(&seed, bytes.data() + 32, 8);
    CHECK(nx == 4);
    CHECK(nt == 2);
    CHECK(dx == 0.5);
    CHECK(dt == 0.25);
    CHECK(seed == 0x0102030405060708ULL);
    // first sample right after the header
    double first = 0.0;
    std::memcpy(&first, bytes.data() + 40, 8);
    CHECK(first == tr.m1[0].values[0]);
}

TEST_CASE("field sequence writer frames rows after the same header") {
    const Grid g(1.0, 4, 0.25, 2);
    FieldSeq rows;
    for (int k = 0; k < g.nt; ++k) {  // noise-style framing: nt rows
        Field f = Field::zeros(g.nx, g.t(k));
        for (int j = 0; j < g.nx; ++j)
            f.values[static_cast<size_t>(j)] = k * 10.0 + j;
        rows.push_back(f);
    }
    const fs::path p = scratch_dir() / "seq.bin";
    write_field_seq_binary(p.string(), g, rows, 5);
    const std::string bytes = file_bytes(p);
    CHECK(bytes.size() == 40 + 2 * 4 * 8);
    double v = 0.0;
    std::memcpy(&v, bytes.data() + 40 + 8 * 5, 8);  // row 1, column 1
    CHECK(v == 11.0);
}

TEST_CASE("malformed artifacts are rejected with runtime_error") {
    const fs::path d = scratch_dir();

    CHECK_THROWS_AS((void)read_trajectory_binary((d / "absent.bin").string()),
                    std::runtime_error);

    const fs::path trunc = d / "truncated-header.bin";
    {
        std::ofstream s(trunc, std::ios::binary);
        s << "short";
    }
    CHECK_THROWS_AS((void)read_trajectory_binary(trunc.string()),
                    std::runtime_error);

    // nonsense header fields
    const fs::path bad = d / "bad-header.bin";
    {
        std::ofstream s(bad, std::ios::binary);
        std::uint64_t nx = 0, nt = 2, seed = 1;
        double dx = 0.5, dt = 0.25;
        s.write(reinterpret_cast<const char*>(&nx), 8);
        s.write(reinterpret_cast<const char*>(&nt), 8);
        s.write(reinterpret_cast<const char*>(&dx), 8);
        s.write(reinterpret_cast<const char*>(&dt), 8);
        s.write(reinterpret_cast<const char*>(&seed), 8);
    }
    CHECK_THROWS_AS((void)read_trajectory_binary(bad.string()),
                    std::runtime_error);

    // body shorter than the header promises
    const Grid g(1.0, 4, 0.25, 2);
    const fs::path shorted = d / "short-body.bin";
    write_trajectory_binary(shorted.string(), make_trajectory(g, 1.0), 9);
    const std::string full = file_bytes(shorted);
    {
        std::ofstream s(shorted, std::ios::binary | std::ios::trunc);
        s.write(full.data(), static_cast<std::streamsize>(full.size() - 8));
    }
    CHECK_THROWS_AS((void)read_trajectory_binary(shorted.string()),
                    std::runtime_error);
}

TEST_CASE("writers validate their framing") {
    const Grid g(1.0, 4, 0.25, 2);
    Trajectory tr = make_trajectory(g, 1.0);
    tr.m2.pop_back();  // components no longer nt+1 each
    const fs::path p = scratch_dir() / "invalid.bin";
    CHECK_THROWS_AS(write_trajectory_binary(p.string(), tr, 1),
                    std::invalid_argument);

    Trajectory wrong = make_trajectory(g, 1.0);
    wrong.m1[1].values.push_back(0.0);  // row length != nx
    CHECK_THROWS_AS(write_trajectory_binary(p.string(), wrong, 1),
                    std::invalid_argument);

    CHECK_THROWS_AS(
        write_trajectory_csv(p.string(), make_trajectory(g, 1.0), 0, 1),
        std::invalid_argument);
    CHECK_THROWS_AS(
        write_trajectory_csv(p.string(), make_trajectory(g, 1.0), 1, -2),
        std::invalid_argument);
}

TEST_CASE("csv output: golden content at stride 1 and subsampling by stride") {
    const Grid g(1.0, 4, 0.25, 2);
    Trajectory tr;
    tr.grid = g;
    for (int k = 0; k <= 2; ++k) {
        Field f1 = Field::zeros(4, g.t(k));
        Field f2 = Field::zeros(4, g.t(k));
        for (int j = 0; j < 4; ++j) {
            f1.values[static_cast<size_t>(j)] = k + j * 0.5;
            f2.values[static_cast<size_t>(j)] = -k * 0.25;
        }
        tr.m1.push_back(f1);
        tr.m2.push_back(f2);
    }

    const fs::path p = scratch_dir() / "golden.csv";
    write_trajectory_csv(p.string(), tr);
    const std::string expected =
        "t,x,m1,m2\n"
        "0,-1,0,0\n"
        "0,-0.5,0.5,0\n"
        "0,0,1,0\n"
        "0,0.5,1.5,0\n"
        "0.25,-1,1,-0.25\n"
        "0.25,-0.5,1.5,-0.25\n"
        "0.25,0,2,-0.25\n"
        "0.25,0.5,2.5,-0.25\n"
        "0.5,-1,2,-0.5\n"
        "0.5,-0.5,2.5,-0.5\n"
        "0.5,0,3,-0.5\n"
        "0.5,0.5,3.5,-0.5\n";
    CHECK(file_bytes(p) == expected);

    write_trajectory_csv(p.string(), tr, 2, 2);
    const std::string expected_strided =
        "t,x,m1,m2\n"
        "0,-1,0,0\n"
        "0,0,1,0\n"
        "0.5,-1,2,-0.5\n"
        "0.5,0,3,-0.5\n";
    CHECK(file_bytes(p) == expected_strided);
}

TEST_CASE("write_text_file creates parents, writes exactly, overwrites") {
    const fs::path nested = scratch_dir() / "deep" / "nested" / "note.txt";
    fs::remove_all(scratch_dir() / "deep");
    write_text_file(nested.string(), "alpha\nbeta\n");
    CHECK(file_bytes(nested) == "alpha\nbeta\n");
    write_text_file(nested.string(), "gamma");
    CHECK(file_bytes(nested) == "gamma");
}
