#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regmodels/cover.hpp"

namespace regmodels {

// e_v d / gcd(d, e_v v(f))
long mult_upstairs(const Cover& cover, const MacLaneVal& v);

enum class DirKind { Down, Zero, Class };

// A point of the v-component: the direction of the tree at v it represents.
struct Direction {
    DirKind kind = DirKind::Zero;
    std::vector<size_t> factors;        // f_i whose divisor meets this point
    std::vector<MacLaneVal> members;     // neighbors of v in the base lying this way
    long order = 0;                      // order of the residual function of f
};

struct ComponentData {
    MacLaneVal v;
    long e = 1;         // e_v
    long big_g = 0;     // e_v v(f)
    long mult = 1;      // multiplicity upstairs
    long count = 1;     // components above v
    long degree = 1;    // degree of each of them over the v-component
    long genus = 0;
    std::vector<Direction> directions;
};

// Directions at v with residual orders; neighbors are taken from base.
ComponentData component_data(const Cover& cover, const ValuationForest& base, const MacLaneVal& v);
long component_count(const Cover& cover, const ValuationForest& base, const MacLaneVal& v);

struct FiberVertex {
    MacLaneVal v;
    long lift = 0;
    long mult = 1;
    long degree = 1;
    long genus = 0;
    std::vector<std::pair<long, long>> ramification;  // (points, index) per branched direction
    std::optional<long> self_intersection;
};

struct FiberEdge {
    size_t a = 0, b = 0;  // vertex indices; a == b is a node of one component
    std::string kind;     // "crossing", "node", "infinity"
    long fiber_size = 0;  // points above the base point
};

struct FiberGraph {
    std::vector<ComponentData> components;  // sorted by canonical string
    std::vector<FiberVertex> vertices;      // sorted by canonical string, then lift
    std::vector<FiberEdge> edges;
};

// Fiber of the normalization of the base model; StructureViolation on failed integrality.
FiberGraph dual_graph(const Cover& cover, const ValuationForest& base);
// As above for base a subset of the regular base reference; points above the image of the
// removed components are read off the fiber of reference.
FiberGraph dual_graph(const Cover& cover, const ValuationForest& base, const ValuationForest& reference);

// Fills in self-intersections; absent on a one-vertex graph.
void self_intersections(FiberGraph& g);

// Base valuations whose lifts are all contractible (-1)-curves; empty on a minimal model.
std::vector<MacLaneVal> contractible_components(const FiberGraph& g);

}  // namespace regmodels
