#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace sqca {

// A cell coordinate (each component reduced into [0, n_i)) and an unwrapped
// lattice vector share the representation; offsets stay unwrapped until they
// are applied to a cell on a concrete shape.
using Coord = std::vector<std::int64_t>;
using Offset = std::vector<std::int64_t>;

// Periodic lattice Z_{n_1} x ... x Z_{n_d}; dims are fixed at construction.
class LatticeShape {
public:
    explicit LatticeShape(std::vector<std::int64_t> dims);

    const std::vector<std::int64_t>& dims() const { return dims_; }
    std::int64_t dim() const { return static_cast<std::int64_t>(dims_.size()); }
    std::int64_t extent(std::size_t axis) const { return dims_[axis]; }
    std::int64_t volume() const { return volume_; }

    bool operator==(const LatticeShape&) const = default;

private:
    std::vector<std::int64_t> dims_;
    std::int64_t volume_;
};

// Lexicographic order with coordinate 1 most significant.  Translation
// invariant: a < b iff a+v < b+v for every shift v.
bool lex_less(const Offset& a, const Offset& b);

// Flattened cell position x_d + n_d x_{d-1} + ... + n_d...n_2 x_1.
std::int64_t lex_index(const Coord& coord, const LatticeShape& shape);

// Inverse of lex_index.
Coord coord_of(std::int64_t index, const LatticeShape& shape);

// Componentwise reduction into [0, n_i).
Coord wrap(const Offset& vector, const LatticeShape& shape);

// Neighborhood: distinct offsets in strictly increasing lex order.
class Stencil {
public:
    static Stencil from_offsets(std::vector<Offset> offsets);

    const std::vector<Offset>& offsets() const { return offsets_; }
    std::size_t size() const { return offsets_.size(); }
    std::int64_t dim() const { return dim_; }
    std::int64_t radius() const { return radius_; }

    // Position of an offset in lex order, if present.
    std::optional<std::size_t> index_of(const Offset& offset) const;

private:
    Stencil() = default;
    std::vector<Offset> offsets_;
    std::int64_t dim_ = 0;
    std::int64_t radius_ = 0;
};

// All of [-r, r]^d, (2r+1)^d offsets.
Stencil box_stencil(std::int64_t d, std::int64_t r);

// {0, +-v1, +-v2, +-(v1+v2)} on Z^2: the triangular-lattice neighborhood.
Stencil triangular_stencil();

} // namespace sqca
