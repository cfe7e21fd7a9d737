#include "acsim/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace acsim {

static_assert(std::endian::native == std::endian::little,
              "binary artifacts are written little-endian via plain memory copies");
static_assert(sizeof(double) == 8 && std::numeric_limits<double>::is_iec559,
              "binary artifacts assume 64-bit IEC 559 doubles");

namespace {

constexpr size_t kHeaderBytes = 5 * 8;

void append_u64(std::string& out, std::uint64_t v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.append(buf, 8);
}

void append_f64(std::string& out, double v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.append(buf, 8);
}

void atomic_dump(const std::string& path, const std::string& bytes) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string header_bytes(const Grid& g, std::uint64_t seed) {
    std::string out;
    out.reserve(kHeaderBytes);
    append_u64(out, static_cast<std::uint64_t>(g.nx));
    append_u64(out, static_cast<std::uint64_t>(g.nt));
    append_f64(out, g.dx);
    append_f64(out, g.dt);
    append_u64(out, seed);
    return out;
}

void append_rows(std::string& out, const Grid& g, const FieldSeq& rows,
                 const char* what) {
    for (const auto& f : rows) {
        if (f.size() != g.nx)
            throw std::invalid_argument(std::string(what) +
                                        ": row length does not match the grid");
        const char* raw = reinterpret_cast<const char*>(f.values.data());
        out.append(raw, static_cast<size_t>(g.nx) * 8);
    }
}

}  // namespace

void write_field_seq_binary(const std::string& path, const Grid& g,
                            const FieldSeq& rows, std::uint64_t seed) {
    std::string bytes = header_bytes(g, seed);
    bytes.reserve(bytes.size() + rows.size() * static_cast<size_t>(g.nx) * 8);
    append_rows(bytes, g, rows, "field sequence dump");
    atomic_dump(path, bytes);
}

void write_trajectory_binary(const std::string& path, const Trajectory& traj,
                             std::uint64_t seed) {
    const Grid& g = traj.grid;
    const size_t expected = static_cast<size_t>(g.nt) + 1;
    if (traj.m1.size() != expected || traj.m2.size() != expected)
        throw std::invalid_argument(
            "trajectory dump: components must hold nt + 1 rows");
    std::string bytes = header_bytes(g, seed);
    bytes.reserve(kHeaderBytes + 2 * expected * static_cast<size_t>(g.nx) * 8);
    append_rows(bytes, g, traj.m1, "trajectory dump");
    append_rows(bytes, g, traj.m2, "trajectory dump");
    atomic_dump(path, bytes);
}

TrajectoryFile read_trajectory_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    if (bytes.size() < kHeaderBytes)
        throw std::runtime_error("'" + path + "': truncated header");

    std::uint64_t nx_u = 0, nt_u = 0, seed = 0;
    double dx = 0.0, dt = 0.0;
    std::memcpy(&nx_u, bytes.data(), 8);
    std::memcpy(&nt_u, bytes.data() + 8, 8);
    std::memcpy(&dx, bytes.data() + 16, 8);
    std::memcpy(&dt, bytes.data() + 24, 8);
    std::memcpy(&seed, bytes.data() + 32, 8);
    if (nx_u < 2 || nx_u > 100000000ull || nt_u < 1 || nt_u > 100000000ull ||
        !(dx > 0.0) || !(dt > 0.0))
        throw std::runtime_error("'" + path + "': nonsense header fields");

    const auto nx = static_cast<int>(nx_u);
    const auto nt = static_cast<int>(nt_u);
    const size_t row_bytes = static_cast<size_t>(nx) * 8;
    const size_t rows = 2 * (static_cast<size_t>(nt) + 1);
    if (bytes.size() != kHeaderBytes + rows * row_bytes)
        throw std::runtime_error("'" + path + "': size does not match the header");

    TrajectoryFile out;
    out.grid = Grid(0.5 * nx * dx, nx, dt, nt);
    out.seed = seed;
    out.trajectory.grid = out.grid;
    const char* p = bytes.data() + kHeaderBytes;
    for (int c = 0; c < 2; ++c) {
        FieldSeq& seq = c == 0 ? out.trajectory.m1 : out.trajectory.m2;
        for (int k = 0; k <= nt; ++k) {
            Field f = Field::zeros(nx, out.grid.t(k));
            std::memcpy(f.values.data(), p, row_bytes);
            p += row_bytes;
            seq.push_back(std::move(f));
        }
    }
    return out;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          int time_stride, int space_stride) {
    if (time_stride < 1 || space_stride < 1)
        throw std::invalid_argument("csv dump: strides must be at least 1");
    const Grid& g = traj.grid;
    std::ostringstream out;
    out << "t,x,m1,m2\n";
    char buf[128];
    for (int k = 0; k <= traj.steps(); k += time_stride) {
        const auto ku = static_cast<size_t>(k);
        for (int j = 0; j < g.nx; j += space_stride) {
            const auto ju = static_cast<size_t>(j);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", g.t(k),
                          g.x(j), traj.m1[ku].values[ju], traj.m2[ku].values[ju]);
            out << buf;
        }
    }
    atomic_dump(path, out.str());
}

void write_text_file(const std::string& path, const std::string& content) {
    atomic_dump(path, content);
}

}  // namespace acsim
