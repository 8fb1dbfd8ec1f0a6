#include "sqca/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sqca {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

} // namespace

LatticeShape::LatticeShape(std::vector<std::int64_t> dims) : dims_(std::move(dims)) {
    require(!dims_.empty(), "LatticeShape: need at least one dimension");
    volume_ = 1;
    for (std::int64_t n : dims_) {
        require(n >= 1, "LatticeShape: cell counts must be positive");
        volume_ *= n;
    }
}

bool lex_less(const Offset& a, const Offset& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::int64_t lex_index(const Coord& coord, const LatticeShape& shape) {
    require(static_cast<std::int64_t>(coord.size()) == shape.dim(),
            "lex_index: dimension mismatch");
    std::int64_t index = 0;
    for (std::size_t i = 0; i < coord.size(); ++i) {
        require(coord[i] >= 0 && coord[i] < shape.extent(i),
                "lex_index: coordinate " + std::to_string(i) + " out of range");
        index = index * shape.extent(i) + coord[i];
    }
    return index;
}

Coord coord_of(std::int64_t index, const LatticeShape& shape) {
    require(index >= 0 && index < shape.volume(), "coord_of: index out of range");
    Coord coord(shape.dim());
    for (std::size_t i = coord.size(); i-- > 0;) {
        coord[i] = index % shape.extent(i);
        index /= shape.extent(i);
    }
    return coord;
}

Coord wrap(const Offset& vector, const LatticeShape& shape) {
    require(static_cast<std::int64_t>(vector.size()) == shape.dim(),
            "wrap: dimension mismatch");
    Coord coord(vector.size());
    for (std::size_t i = 0; i < vector.size(); ++i) {
        const std::int64_t n = shape.extent(i);
        coord[i] = ((vector[i] % n) + n) % n;
    }
    return coord;
}

Stencil Stencil::from_offsets(std::vector<Offset> offsets) {
    require(!offsets.empty(), "Stencil: empty neighborhood");
    const std::size_t d = offsets.front().size();
    require(d >= 1, "Stencil: offsets must have dimension >= 1");
    for (const Offset& e : offsets)
        require(e.size() == d, "Stencil: mixed offset dimensions");

    std::sort(offsets.begin(), offsets.end(), lex_less);
    require(std::adjacent_find(offsets.begin(), offsets.end()) == offsets.end(),
            "Stencil: duplicate offset");

    Stencil s;
    s.offsets_ = std::move(offsets);
    s.dim_ = static_cast<std::int64_t>(d);
    s.radius_ = 0;
    for (const Offset& e : s.offsets_)
        for (std::int64_t c : e)
            s.radius_ = std::max<std::int64_t>(s.radius_, std::llabs(c));
    return s;
}

std::optional<std::size_t> Stencil::index_of(const Offset& offset) const {
    const auto it = std::lower_bound(offsets_.begin(), offsets_.end(), offset, lex_less);
    if (it == offsets_.end() || *it != offset) return std::nullopt;
    return static_cast<std::size_t>(it - offsets_.begin());
}

Stencil box_stencil(std::int64_t d, std::int64_t r) {
    if (d < 1) throw std::invalid_argument("box_stencil: d must be >= 1");
    if (r < 0) throw std::invalid_argument("box_stencil: r must be >= 0");
    std::vector<Offset> offsets;
    Offset cur(d, -r);
    for (;;) {
        offsets.push_back(cur);
        // odometer over [-r, r]^d, least significant coordinate last:
        // emits offsets already in lex order
        std::size_t i = cur.size();
        while (i-- > 0) {
            if (cur[i] < r) {
                ++cur[i];
                break;
            }
            cur[i] = -r;
            if (i == 0) return Stencil::from_offsets(std::move(offsets));
        }
    }
}

Stencil triangular_stencil() {
    return Stencil::from_offsets({{0, 0},
                                  {1, 0},
                                  {-1, 0},
                                  {0, 1},
                                  {0, -1},
                                  {1, 1},
                                  {-1, -1}});
}

} // namespace sqca
