#include "stokes/boundary.hpp"

#include <stdexcept>
#include <string>

namespace stokes {

std::string_view to_string(Edge edge)
{
    switch (edge) {
    case Edge::Left: return "left";
    case Edge::Right: return "right";
    case Edge::Bottom: return "bottom";
    case Edge::Top: return "top";
    }
    return "?";
}

bool BoundarySet::complete(VariableRole role) const
{
    for (Edge e : kAllEdges)
        if (!has(role, e))
            return false;
    return true;
}

const Condition& BoundarySet::at(VariableRole role, Edge edge) const
{
    const auto& slot = slots_[index(role)][index(edge)];
    if (!slot)
        throw std::invalid_argument("missing boundary condition for " +
                                    std::string(to_string(role)) + " on " +
                                    std::string(to_string(edge)) + " edge");
    return *slot;
}

BoundarySet BoundarySet::homogeneous_dirichlet()
{
    BoundarySet bc;
    for (VariableRole r : kAllRoles)
        bc.set_all(r, Condition::dirichlet(0.0));
    return bc;
}

}  // namespace stokes
