#include "sngraph/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "sngraph/error.hpp"
#include "sngraph/parallel.hpp"

namespace sngraph {

SdfGrid::SdfGrid(int resolution, std::vector<float> values, bool empty_object)
    : resolution_(resolution), values_(std::move(values)), empty_object_(empty_object) {
    const auto r = static_cast<std::size_t>(resolution);
    if (values_.size() != r * r * r) throw Error("SDF value count does not match resolution");
}

VoxelIndex SdfGrid::unravel(std::size_t idx) const {
    const auto r = static_cast<std::size_t>(resolution_);
    return {static_cast<int>(idx % r), static_cast<int>((idx / r) % r), static_cast<int>(idx / (r * r))};
}

// Rounded to f32 so node centers survive the binary graph format unchanged.
Vec3 SdfGrid::center(int i, int j, int k) const {
    const double o = origin(), s = voxel_size();
    return {static_cast<float>(o + i * s), static_cast<float>(o + j * s), static_cast<float>(o + k * s)};
}

std::size_t SdfGrid::count_interior() const {
    return static_cast<std::size_t>(std::count_if(values_.begin(), values_.end(), [](float v) { return v > 0.0f; }));
}

namespace {

// Lower envelope of parabolas (Felzenszwalb & Huttenlocher) with every
// comparison done on integers, so the result is exact. Sites are the
// finite entries of `f`; with `pad` the positions -1 and n are extra sites
// of height 0.
class EnvelopeTransform {
public:
    void run(const std::int64_t* f, std::int64_t* out, int n, bool pad) {
        sites_.clear();
        heights_.clear();
        bound_num_.clear();
        bound_den_.clear();
        auto push_site = [&](std::int64_t q, std::int64_t fq) {
            const std::int64_t cq = fq + q * q;
            while (!sites_.empty()) {
                const std::int64_t p = sites_.back();
                const std::int64_t num = cq - (heights_.back() + p * p);
                const std::int64_t den = 2 * (q - p);
                // Pop while the new parabola takes over at or before the
                // previous boundary: num/den <= bound_num/bound_den.
                if (sites_.size() > 1 && num * bound_den_.back() <= bound_num_.back() * den) {
                    sites_.pop_back();
                    heights_.pop_back();
                    bound_num_.pop_back();
                    bound_den_.pop_back();
                    continue;
                }
                bound_num_.push_back(num);
                bound_den_.push_back(den);
                sites_.push_back(q);
                heights_.push_back(fq);
                return;
            }
            bound_num_.push_back(0);
            bound_den_.push_back(1);  // unused for the first site
            sites_.push_back(q);
            heights_.push_back(fq);
        };

        if (pad) push_site(-1, 0);
        for (int q = 0; q < n; ++q) {
            if (f[q] < kEdtInfinity) push_site(q, f[q]);
        }
        if (pad) push_site(n, 0);

        if (sites_.empty()) {
            std::fill(out, out + n, kEdtInfinity);
            return;
        }
        std::size_t k = 0;
        for (std::int64_t x = 0; x < n; ++x) {
            while (k + 1 < sites_.size() && bound_num_[k + 1] < x * bound_den_[k + 1]) ++k;
            const std::int64_t dx = x - sites_[k];
            out[x] = dx * dx + heights_[k];
        }
    }

private:
    std::vector<std::int64_t> sites_;
    std::vector<std::int64_t> heights_;
    std::vector<std::int64_t> bound_num_;
    std::vector<std::int64_t> bound_den_;
};

}  // namespace

std::vector<std::int64_t> squared_edt(const VoxelGrid& grid, bool site_value, int threads) {
    const int R = grid.resolution();
    const auto r = static_cast<std::size_t>(R);
    std::vector<std::int64_t> dist(grid.size());
    for (std::size_t li = 0; li < grid.size(); ++li) {
        dist[li] = grid.occupied(li) == site_value ? 0 : kEdtInfinity;
    }
    const bool pad = !site_value;

    // Three passes, one per axis; each line along the axis is independent.
    const std::size_t strides[3] = {1, r, r * r};
    for (int axis = 0; axis < 3; ++axis) {
        const std::size_t stride = strides[axis];
        const std::size_t lines = r * r;
        parallel_chunks(lines, threads, [&](int, std::size_t begin, std::size_t end) {
            EnvelopeTransform envelope;
            std::vector<std::int64_t> in(r), out(r);
            for (std::size_t line = begin; line < end; ++line) {
                // The two coordinates orthogonal to `axis`.
                const std::size_t a = line % r, b = line / r;
                std::size_t base = 0;
                if (axis == 0) base = a * r + b * r * r;
                if (axis == 1) base = a + b * r * r;
                if (axis == 2) base = a + b * r;
                for (std::size_t t = 0; t < r; ++t) in[t] = dist[base + t * stride];
                envelope.run(in.data(), out.data(), R, pad);
                for (std::size_t t = 0; t < r; ++t) dist[base + t * stride] = out[t];
            }
        });
    }
    return dist;
}

SdfGrid compute_sdf(const VoxelGrid& solid, int threads) {
    const int R = solid.resolution();
    if (solid.count_occupied() == 0) {
        return SdfGrid(R, std::vector<float>(solid.size(), -1.0f), true);
    }
    const std::vector<std::int64_t> depth = squared_edt(solid, false, threads);
    const std::vector<std::int64_t> gap = squared_edt(solid, true, threads);
    std::vector<float> values(solid.size());
    for (std::size_t li = 0; li < solid.size(); ++li) {
        const double d = std::sqrt(static_cast<double>(solid.occupied(li) ? depth[li] : gap[li])) / R;
        values[li] = static_cast<float>(solid.occupied(li) ? d : -d);
    }
    return SdfGrid(R, std::move(values), false);
}

namespace {

constexpr char kSdfMagic[4] = {'S', 'N', 'F', '1'};

void put_bytes_le(std::string& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

std::uint32_t get_bytes_le(const std::string& in, std::size_t pos) {
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + b])) << (8 * b);
    return v;
}

}  // namespace

void write_sdf(const SdfGrid& sdf, const std::filesystem::path& path) {
    std::string out(kSdfMagic, 4);
    put_bytes_le(out, static_cast<std::uint32_t>(sdf.resolution()));
    out.reserve(8 + 4 * sdf.size());
    for (const float v : sdf.values()) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        put_bytes_le(out, bits);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot write " + path.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

SdfGrid read_sdf(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open " + path.string());
    const std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (in.size() < 8 || std::memcmp(in.data(), kSdfMagic, 4) != 0) throw FormatError("bad SNF1 magic");
    const std::uint32_t R = get_bytes_le(in, 4);
    if (R == 0 || R > 4096) throw FormatError("bad SNF1 resolution");
    const std::size_t n = static_cast<std::size_t>(R) * R * R;
    if (in.size() != 8 + 4 * n) throw FormatError("truncated SNF1 payload");
    std::vector<float> values(n);
    bool any_interior = false;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t bits = get_bytes_le(in, 8 + 4 * i);
        std::memcpy(&values[i], &bits, 4);
        any_interior = any_interior || values[i] > 0.0f;
    }
    const bool empty = !any_interior && std::all_of(values.begin(), values.end(), [](float v) { return v == -1.0f; });
    return SdfGrid(static_cast<int>(R), std::move(values), empty);
}

}  // namespace sngraph
