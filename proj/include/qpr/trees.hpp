#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qpr/forcing.hpp"
#include "qpr/frequency.hpp"
#include "qpr/scales.hpp"
#include "qpr/trigpoly.hpp"

namespace qpr {

// Rooted planar tree with labels.  Nodes are stored in preorder; node 0 is the
// node the root line exits.  Children are ordered: trees differing by child
// order are distinct.  momentum[v] is the momentum of the line exiting v
// (derived from the conservation law: sum of modes weakly below v), and
// scale[v] its scale label; the root line gets scale -1 iff its momentum is 0.
struct LabelledTree {
    std::vector<int> parent;                  // parent[0] = -1
    std::vector<std::vector<int>> children;   // ordered child lists
    std::vector<Multi> mode;                  // nu_v
    std::vector<Multi> momentum;              // nu_{l_v}
    std::vector<int> scale;                   // n_{l_v}

    int order() const { return static_cast<int>(parent.size()); }
    int s(int v) const { return static_cast<int>(children[v].size()); }
    // sum_v |nu_v|_1, the mode mass driving the counting bounds.
    long long mode_mass() const;
    // Normalized parenthesized form for golden tests.
    std::string dump() const;
};

enum class TreeMode { Plain, Renormalised };

// Immutable bundle shared by every tree/cluster computation: the forcing,
// frequency data, cutoff family, node factors, reach sets and the divisor
// cache.  Build once, then use freely from any thread.
class TreeContext {
  public:
    TreeContext(const ForcingSpec& spec, const FrequencyVector& omega,
                const CutoffFamily& fam, int k_max);

    const ForcingSpec& spec() const { return *spec_; }
    const FrequencyVector& omega() const { return *omega_; }
    const CutoffFamily& family() const { return *fam_; }
    int k_max() const { return k_max_; }

    double divisor(const Multi& nu) const;     // omega.nu (0 for nu = 0)
    const TrigPoly& factor(const Multi& nu, unsigned s) const;
    const std::vector<Multi>& reach(int j) const;        // momenta of j modes
    bool reachable(int j, const Multi& nu) const;

  private:
    const ForcingSpec* spec_;
    const FrequencyVector* omega_;
    const CutoffFamily* fam_;
    int k_max_;
    NodeFactorTable factors_;
    std::vector<std::vector<Multi>> reach_;
    std::map<Multi, double> divisors_;
};

// Marker for lines whose scale labels have not been assigned yet.
inline constexpr int kScaleUnassigned = -2;

struct TreeEnumOptions {
    int k = 1;
    Multi total;                                  // root-line momentum
    TreeMode mode = TreeMode::Plain;
    CutoffVariant cutoff = CutoffVariant::Sharp;  // smooth: one tree per scale assignment
    bool allow_zero_lines = false;                // self-energy skeletons only
    bool skeleton = false;                        // emit without scale labels or filtering
    int cap = 8;
};

using TreeVisitor = std::function<void(const LabelledTree&)>;

// Stream every labelled tree exactly once (deterministic DFS order).
void enumerate_trees(const TreeContext& ctx, const TreeEnumOptions& opts, const TreeVisitor& visit);

// Undressed value: product of node factors (1/s_v!) d^{s_v} F_{nu_v} and of
// line factors Psi_{n_l}(omega.nu_l)/(omega.nu_l)^2; a zero-momentum root line
// contributes 1.  Returns the zero polynomial when any node factor vanishes.
TrigPoly tree_value(const TreeContext& ctx, const LabelledTree& t, CutoffVariant cutoff);

// Propagators for order-truncated dressed evaluations (numeric beta0).
struct PropagatorProvider {
    // Psi_n(x) / (x^2 - correction); implementations define the correction.
    virtual double propagator(int n, double x) const = 0;
    virtual ~PropagatorProvider() = default;
};

// Dressed-truncated value at fixed beta0: node factors evaluated numerically,
// line factors from the provider.
double tree_value_dressed(const TreeContext& ctx, const LabelledTree& t,
                          const PropagatorProvider& prop, double beta0);

// Sum of tree_value over the stream.  The parallel version splits the
// enumeration at the root decision level and merges per-task partial sums in
// task order, so results are deterministic for any thread count.
TrigPoly sum_trees(const TreeContext& ctx, const TreeEnumOptions& opts);
TrigPoly sum_trees_serial_reference(const TreeContext& ctx, const TreeEnumOptions& opts);

// ---- clusters ----------------------------------------------------------

// Generalized line for cluster analysis.  Momenta are kept symbolic as
// (nu0, shifted): `shifted` marks lines whose argument carries the formal
// entering momentum x of a self-energy structure.
struct LineRef {
    int child = -1;       // node the line exits (-1: external entering line)
    int parent = -1;      // node the line enters (-1: beyond the root)
    Multi nu0;
    bool shifted = false;
    int scale = 0;
};

struct ClusterInfo {
    std::vector<int> nodes;
    int scale = -1;                // -1 only for single-node zero-mode clusters
    std::vector<int> entering;     // line indices
    int exiting = -1;              // line index or -1
    bool self_energy = false;      // one entering line, equal external momenta
    bool self_energy_gap = false;  // + scale gap n+2 <= min external scale
};

struct FakePair {
    int exit_line = -1;
    int enter_line = -1;
    int scale = -1;
};

struct ClusterReport {
    std::vector<ClusterInfo> clusters;
    std::vector<char> resonant;    // per line: exits a gap self-energy cluster
    std::vector<FakePair> left_fake;
    std::vector<FakePair> right_fake;

    bool has_self_energy() const;
    bool has_gap_self_energy() const;
};

// Lines of a plain tree; line i exits node i (the root line is index 0 and
// has parent -1).
std::vector<LineRef> lines_of_tree(const LabelledTree& t);

ClusterReport analyze_clusters(const std::vector<LineRef>& lines, int n_nodes,
                               bool with_fakes = false);

// ---- counting ----------------------------------------------------------

// Number of lines with scale >= n among `lines` (pass the line set of the
// object being counted: all tree lines, or a structure's internal lines).
int count_lines_on_scale(const std::vector<LineRef>& lines, int n);
// Same, excluding resonant lines.
int count_nonresonant_lines_on_scale(const std::vector<LineRef>& lines,
                                     const ClusterReport& report, int n);

// Integer-exact Siegel-Bryuno bound check: count <= 2^{-(m_n - 2)} * mass.
bool counting_bound_holds(long long count, long long mass, int m_n);
// floor(4*mass / 2^{m_n}) - count; >= 0 iff the bound holds.
long long counting_bound_slack(long long count, long long mass, int m_n);

}  // namespace qpr
