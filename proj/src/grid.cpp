#include "stokes/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stokes {

std::string_view to_string(Layout layout)
{
    switch (layout) {
    case Layout::Collocated: return "collocated";
    case Layout::SaddleStaggered: return "saddle-staggered";
    case Layout::ProjectionStaggered: return "projection-staggered";
    }
    return "?";
}

std::string_view to_string(VariableRole role)
{
    switch (role) {
    case VariableRole::P: return "p";
    case VariableRole::U: return "u";
    case VariableRole::V: return "v";
    }
    return "?";
}

Layout parse_layout(std::string_view text)
{
    for (Layout l : {Layout::Collocated, Layout::SaddleStaggered, Layout::ProjectionStaggered})
        if (to_string(l) == text)
            return l;
    throw std::invalid_argument("unknown layout '" + std::string(text) + "'");
}

double axis_offset(AxisPlacement placement)
{
    switch (placement) {
    case AxisPlacement::WallNodes: return 0.0;
    case AxisPlacement::CellCentred: return 0.5;
    case AxisPlacement::ShiftedNodes: return 1.0;
    }
    return 0.0;
}

AxisPlacement GridSpec::x_placement(VariableRole role) const
{
    switch (layout_) {
    case Layout::Collocated: return AxisPlacement::WallNodes;
    case Layout::SaddleStaggered:
        return role == VariableRole::U ? AxisPlacement::ShiftedNodes : AxisPlacement::CellCentred;
    case Layout::ProjectionStaggered:
        return role == VariableRole::P ? AxisPlacement::ShiftedNodes : AxisPlacement::CellCentred;
    }
    return AxisPlacement::WallNodes;
}

AxisPlacement GridSpec::y_placement(VariableRole role) const
{
    switch (layout_) {
    case Layout::Collocated: return AxisPlacement::WallNodes;
    case Layout::SaddleStaggered:
        return role == VariableRole::V ? AxisPlacement::ShiftedNodes : AxisPlacement::CellCentred;
    case Layout::ProjectionStaggered:
        return role == VariableRole::P ? AxisPlacement::ShiftedNodes : AxisPlacement::CellCentred;
    }
    return AxisPlacement::WallNodes;
}

Point GridSpec::lattice_point(VariableRole role, int i, int j) const
{
    return {x0_ + (i + axis_offset(x_placement(role))) * dx_,
            y0_ + (j + axis_offset(y_placement(role))) * dy_};
}

GridSpec build_grid(int M, double width, double height, Layout layout, double x0, double y0)
{
    if (M < 3)
        throw std::invalid_argument("grid needs M >= 3, got " + std::to_string(M));
    if (!(width > 0.0) || !(height > 0.0))
        throw std::invalid_argument("grid extents must be positive");
    const int intervals = layout == Layout::Collocated ? M - 1 : M;
    const double hx = width / intervals;
    const double hy = height / intervals;
    if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy))
        throw std::invalid_argument("grid spacing must satisfy dx == dy (width " +
                                    std::to_string(width) + " vs height " +
                                    std::to_string(height) + ")");
    GridSpec spec;
    spec.m_ = M;
    spec.width_ = width;
    spec.height_ = height;
    spec.x0_ = x0;
    spec.y0_ = y0;
    spec.dx_ = hx;
    spec.dy_ = hx;
    spec.layout_ = layout;
    return spec;
}

Point node_coords(const GridSpec& spec, VariableRole role, int i, int j)
{
    if (!spec.in_range(i, j))
        throw std::out_of_range("node (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside M = " + std::to_string(spec.M()));
    return spec.lattice_point(role, i, j);
}

bool IndexMap::contains(VariableRole role) const
{
    return std::find(roles_.begin(), roles_.end(), role) != roles_.end();
}

std::size_t IndexMap::block_offset(VariableRole role) const
{
    auto it = std::find(roles_.begin(), roles_.end(), role);
    if (it == roles_.end())
        throw std::out_of_range("role " + std::string(to_string(role)) + " not in index map");
    return static_cast<std::size_t>(it - roles_.begin()) * block_;
}

std::size_t IndexMap::index(VariableRole role, int i, int j) const
{
    auto it = std::find(roles_.begin(), roles_.end(), role);
    if (it == roles_.end())
        throw std::out_of_range("role " + std::string(to_string(role)) + " not in index map");
    if (i < 0 || j < 0 || i >= m_ || j >= m_)
        throw std::out_of_range("index map lookup (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") outside M = " + std::to_string(m_));
    return tables_[static_cast<std::size_t>(it - roles_.begin())]
                  [static_cast<std::size_t>(i) * m_ + static_cast<std::size_t>(j)];
}

IndexMap::Entry IndexMap::entry(std::size_t linear) const
{
    if (linear >= size())
        throw std::out_of_range("linear index " + std::to_string(linear) + " beyond map size");
    const std::size_t k = linear / block_;
    const std::size_t local = linear % block_;
    return {roles_[k], static_cast<int>(local % m_), static_cast<int>(local / m_)};
}

IndexMap build_index_map(const GridSpec& spec, std::span<const VariableRole> roles)
{
    if (roles.empty())
        throw std::invalid_argument("index map needs at least one role");
    std::vector<VariableRole> ordered;
    for (VariableRole r : kAllRoles) {
        const auto n = std::count(roles.begin(), roles.end(), r);
        if (n > 1)
            throw std::invalid_argument("duplicate role " + std::string(to_string(r)) +
                                        " in index map");
        if (n == 1)
            ordered.push_back(r);
    }

    IndexMap map;
    map.m_ = spec.M();
    map.block_ = spec.nodes();
    map.roles_ = std::move(ordered);
    map.tables_.resize(map.roles_.size());
    std::size_t next = 0;
    for (auto& table : map.tables_) {
        table.resize(map.block_);
        // i runs fastest so p_{i+1,j} follows p_{i,j}, as in the stacked vector p11..pM1..pMM
        for (int j = 0; j < map.m_; ++j)
            for (int i = 0; i < map.m_; ++i)
                table[static_cast<std::size_t>(i) * map.m_ + static_cast<std::size_t>(j)] = next++;
    }
    return map;
}

}  // namespace stokes
