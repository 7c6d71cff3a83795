#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace diametral {

inline constexpr double kPi = std::numbers::pi;

// Default tolerances for unit-scale geometry: absolute coordinate/angle
// predicates and relative diameter-pair membership.
struct Tolerances {
    double abs = 1e-9;
    double diam = 1e-7;
};

enum class Tristate { holds, fails, inconclusive };

inline const char* to_string(Tristate t) {
    switch (t) {
        case Tristate::holds: return "holds";
        case Tristate::fails: return "fails";
        default: return "inconclusive";
    }
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct NotOnBoundary : Error { using Error::Error; };
struct BadCardinality : Error { using Error::Error; };
struct HypothesisNotMet : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct OnDiameter : Error { using Error::Error; };
struct DegenerateAngle : Error { using Error::Error; };
struct EmptySection : Error { using Error::Error; };
struct DegeneratePoints : Error { using Error::Error; };
struct NonAdjacentSequence : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct UnknownSuite : Error { using Error::Error; };
struct InvalidSetting : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct BadPointSpec : Error { using Error::Error; };
struct Unplottable : Error { using Error::Error; };
struct DegenerateTriangle : Error { using Error::Error; };

// Maximal-distance result. Endpoints of a diameter of a polygon/polytope are
// extreme points, hence vertices; pairs are normalized (i < j) and sorted.
// Every listed pair has distance >= length * (1 - tolerance).
struct DiameterResult {
    double length = 0.0;
    std::vector<std::pair<int, int>> pairs;
    double tolerance = 0.0;

    bool contains(int i, int j) const {
        if (i > j) std::swap(i, j);
        for (const auto& p : pairs)
            if (p.first == i && p.second == j) return true;
        return false;
    }
    bool has_endpoint(int i) const {
        for (const auto& p : pairs)
            if (p.first == i || p.second == i) return true;
        return false;
    }
};

// Result of evaluating an angle-sum criterion on a point set E.
// The implication hypothesis => conclusion is *not* enforced here; it is the
// statement under test.
struct CriterionVerdict {
    double angle_sum = 0.0;
    double bound = 0.0;
    bool hypothesis_holds = false;
    Tristate conclusion = Tristate::fails;
    std::vector<int> diametral_members;  // indices into E
    double margin = 0.0;                 // bound - angle_sum

    bool conclusion_holds() const { return conclusion == Tristate::holds; }
};

}  // namespace diametral
