#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string_view>

#include "stokes/grid.hpp"

namespace stokes {

enum class Edge { Left = 0, Right = 1, Bottom = 2, Top = 3 };

inline constexpr std::array<Edge, 4> kAllEdges{Edge::Left, Edge::Right, Edge::Bottom, Edge::Top};

std::string_view to_string(Edge edge);

enum class ConditionKind { Dirichlet, Neumann };

/// Boundary data as a function of the wall point (x, y).
using WallFunction = std::function<double(double, double)>;

/// A Dirichlet value, or a Neumann value given as the derivative along the
/// coordinate axis normal to the edge (d/dx on left/right, d/dy on bottom/top),
/// not along the outward normal.
struct Condition {
    ConditionKind kind = ConditionKind::Dirichlet;
    WallFunction value;

    static Condition dirichlet(double c)
    {
        return {ConditionKind::Dirichlet, [c](double, double) { return c; }};
    }
    static Condition dirichlet(WallFunction fn) { return {ConditionKind::Dirichlet, std::move(fn)}; }
    static Condition neumann(double c)
    {
        return {ConditionKind::Neumann, [c](double, double) { return c; }};
    }
    static Condition neumann(WallFunction fn) { return {ConditionKind::Neumann, std::move(fn)}; }
};

/// Per-role, per-edge boundary conditions.
class BoundarySet {
public:
    void set(VariableRole role, Edge edge, Condition c)
    {
        slots_[index(role)][index(edge)] = std::move(c);
    }
    void set_all(VariableRole role, const Condition& c)
    {
        for (Edge e : kAllEdges)
            set(role, e, c);
    }

    bool has(VariableRole role, Edge edge) const
    {
        return slots_[index(role)][index(edge)].has_value();
    }
    bool complete(VariableRole role) const;

    /// Throws std::invalid_argument naming the missing (role, edge) slot.
    const Condition& at(VariableRole role, Edge edge) const;

    /// Homogeneous Dirichlet on every slot.
    static BoundarySet homogeneous_dirichlet();

private:
    static std::size_t index(VariableRole r) { return static_cast<std::size_t>(r); }
    static std::size_t index(Edge e) { return static_cast<std::size_t>(e); }

    std::array<std::array<std::optional<Condition>, 4>, 3> slots_;
};

}  // namespace stokes
