#include "amhd/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace amhd {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'A', 'M', 'H', 'D'};

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw IoError("snapshot: truncated file");
    return v;
}

}  // namespace

SnapshotData to_snapshot(const MHDState& state, const PhysParams& params) {
    SnapshotData s;
    s.n1 = static_cast<std::uint32_t>(state.grid().n1);
    s.n2 = static_cast<std::uint32_t>(state.grid().n2);
    s.time = state.time();
    s.beta = params.beta;
    s.eta = params.eta;
    s.mode = static_cast<std::uint8_t>(params.diffusion);
    s.formulation = static_cast<std::uint8_t>(state.formulation());
    for (const auto& f : state.fields()) s.arrays.push_back(inverse_transform(f));
    return s;
}

MHDState state_from_snapshot(const SnapshotData& snap) {
    const Grid grid(static_cast<int>(snap.n1), static_cast<int>(snap.n2));
    std::vector<SpectralField> fields;
    for (const auto& a : snap.arrays) fields.push_back(dealias(forward_transform(a, grid)));
    const auto form = static_cast<Formulation>(snap.formulation);
    if (form == Formulation::primitive) {
        if (fields.size() != 4) throw IoError("snapshot: primitive layout needs 4 arrays");
        return MHDState::primitive(std::move(fields[0]), std::move(fields[1]),
                                   std::move(fields[2]), std::move(fields[3]), snap.time);
    }
    if (fields.size() != 2) throw IoError("snapshot: vorticity-current layout needs 2 arrays");
    return MHDState::vorticity_current(std::move(fields[0]), std::move(fields[1]), snap.time);
}

void write_snapshot(const std::string& path, const SnapshotData& snap) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("snapshot: cannot open for writing: " + path);
    os.write(kMagic, 4);
    put(os, snap.version);
    put(os, snap.n1);
    put(os, snap.n2);
    put(os, snap.time);
    put(os, snap.beta);
    put(os, snap.eta);
    put(os, snap.mode);
    put(os, snap.formulation);
    const std::size_t expect = static_cast<std::size_t>(snap.n1) * snap.n2;
    for (const auto& a : snap.arrays) {
        if (a.size() != expect) throw IoError("snapshot: array size does not match grid");
        os.write(reinterpret_cast<const char*>(a.data()),
                 static_cast<std::streamsize>(a.size() * sizeof(double)));
    }
    if (!os) throw IoError("snapshot: write failed: " + path);
}

SnapshotData read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("snapshot: cannot open for reading: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("snapshot: bad magic bytes in " + path);
    SnapshotData s;
    s.version = get<std::uint32_t>(is);
    if (s.version != 1) throw IoError("snapshot: unsupported format version");
    s.n1 = get<std::uint32_t>(is);
    s.n2 = get<std::uint32_t>(is);
    s.time = get<double>(is);
    s.beta = get<double>(is);
    s.eta = get<double>(is);
    s.mode = get<std::uint8_t>(is);
    s.formulation = get<std::uint8_t>(is);
    const int n_arrays = s.formulation == 0 ? 4 : 2;
    const std::size_t expect = static_cast<std::size_t>(s.n1) * s.n2;
    for (int i = 0; i < n_arrays; ++i) {
        std::vector<double> a(expect);
        is.read(reinterpret_cast<char*>(a.data()),
                static_cast<std::streamsize>(expect * sizeof(double)));
        if (!is) throw IoError("snapshot: truncated array data in " + path);
        s.arrays.push_back(std::move(a));
    }
    return s;
}

}  // namespace amhd
