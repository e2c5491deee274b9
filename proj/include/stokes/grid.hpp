#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace stokes {

enum class Layout {
    Collocated,          // node-based, every variable on the same lattice, walls on nodes
    SaddleStaggered,     // MAC: p at cell centres, u on vertical faces, v on horizontal faces
    ProjectionStaggered  // u, v at cell centres, p at the upper-right cell corners
};

enum class VariableRole { P = 0, U = 1, V = 2 };

inline constexpr std::array<VariableRole, 3> kAllRoles{VariableRole::P, VariableRole::U,
                                                       VariableRole::V};

std::string_view to_string(Layout layout);
std::string_view to_string(VariableRole role);
Layout parse_layout(std::string_view text);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Placement of a variable's lattice along one axis.
///
/// Node k of the lattice sits at origin + (k + offset) * h. For Collocated the
/// offset is 0 and both walls carry nodes (k = 0 and k = M-1). For staggered
/// layouts h = extent / M and the offset is 1/2 (walls half a cell outside the
/// first and last node) or 1 (low wall at the unstored index -1, high wall on
/// the stored node M-1).
enum class AxisPlacement { WallNodes, CellCentred, ShiftedNodes };

double axis_offset(AxisPlacement placement);

/// Discretization geometry. Immutable once built; construct with build_grid.
class GridSpec {
public:
    int M() const { return m_; }
    double width() const { return width_; }
    double height() const { return height_; }
    double x0() const { return x0_; }
    double y0() const { return y0_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    Layout layout() const { return layout_; }

    /// Total nodes per variable.
    std::size_t nodes() const { return static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_); }

    AxisPlacement x_placement(VariableRole role) const;
    AxisPlacement y_placement(VariableRole role) const;

    /// Coordinates of a (possibly ghost) lattice index. No range check.
    Point lattice_point(VariableRole role, int i, int j) const;

    bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i < m_ && j < m_; }

    friend GridSpec build_grid(int M, double width, double height, Layout layout, double x0,
                               double y0);

private:
    GridSpec() = default;

    int m_ = 0;
    double width_ = 0.0;
    double height_ = 0.0;
    double x0_ = 0.0;
    double y0_ = 0.0;
    double dx_ = 0.0;
    double dy_ = 0.0;
    Layout layout_ = Layout::Collocated;
};

/// Builds a square-spaced grid. Throws std::invalid_argument when M < 3, an
/// extent is not positive, or width and height would give different spacings.
GridSpec build_grid(int M, double width, double height, Layout layout, double x0 = 0.0,
                    double y0 = 0.0);

/// Physical position of node (i, j) of the given variable. Throws
/// std::out_of_range for indices outside [0, M).
Point node_coords(const GridSpec& spec, VariableRole role, int i, int j);

/// Per-role table of linear indices into a stacked vector [p..., u..., v...].
class IndexMap {
public:
    std::size_t size() const { return roles_.size() * block_; }
    std::span<const VariableRole> roles() const { return roles_; }
    int M() const { return m_; }

    bool contains(VariableRole role) const;

    /// Linear index of (role, i, j); throws std::out_of_range when the role is
    /// not mapped or indices fall outside the grid.
    std::size_t index(VariableRole role, int i, int j) const;

    struct Entry {
        VariableRole role;
        int i;
        int j;
    };
    Entry entry(std::size_t linear) const;

    /// Offset of the first entry of a role's block.
    std::size_t block_offset(VariableRole role) const;

    friend IndexMap build_index_map(const GridSpec& spec, std::span<const VariableRole> roles);

private:
    int m_ = 0;
    std::size_t block_ = 0;
    std::vector<VariableRole> roles_;
    // tables_[k][i * M + j] for roles_[k]
    std::vector<std::vector<std::size_t>> tables_;
};

/// Blocks follow the canonical [p, u, v] order regardless of the order given.
/// Throws std::invalid_argument for an empty list or duplicates.
IndexMap build_index_map(const GridSpec& spec, std::span<const VariableRole> roles);

}  // namespace stokes
