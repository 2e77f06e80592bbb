#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qalg/scalar.hpp"

namespace qalg {

/// A finite quiver. Vertices and arrows are addressed by their index in
/// declaration order; arrow labels are unique.
struct Arrow {
    std::string label;
    int source = 0;
    int target = 0;
};

class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const std::string& vertex_name(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
    const Arrow& arrow(int a) const { return arrows_[static_cast<std::size_t>(a)]; }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    int vertex_index(const std::string& name) const; // -1 when absent
    int arrow_index(const std::string& label) const; // -1 when absent

    /// Arrows leaving v, in declaration order.
    const std::vector<int>& arrows_from(int v) const { return out_[static_cast<std::size_t>(v)]; }

    /// Same vertices, every arrow reversed (labels kept).
    Quiver opposite() const;

    bool operator==(const Quiver& o) const;

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> out_;
};

/// A directed path: consecutive arrows compose left to right, so the word
/// "alpha*beta" means alpha first, then beta. Trivial paths carry only their
/// vertex.
class Path {
public:
    Path() = default;
    static Path trivial(int vertex) {
        Path p;
        p.source_ = p.target_ = vertex;
        return p;
    }
    static Path of_arrow(const Quiver& q, int arrow_index);
    /// Concatenates the given arrow indices; throws when not composable.
    static Path word(const Quiver& q, const std::vector<int>& arrow_indices);

    int source() const { return source_; }
    int target() const { return target_; }
    std::size_t length() const { return arrows_.size(); }
    bool is_trivial() const { return arrows_.empty(); }
    const std::vector<int>& arrows() const { return arrows_; }

    bool operator==(const Path& o) const {
        return source_ == o.source_ && target_ == o.target_ && arrows_ == o.arrows_;
    }

    /// "e_v" for trivial paths, otherwise the label word "alpha*beta".
    std::string str(const Quiver& q) const;

private:
    friend std::optional<Path> compose(const Path& p, const Path& q);
    void append_unchecked(const Path& q) {
        arrows_.insert(arrows_.end(), q.arrows_.begin(), q.arrows_.end());
        target_ = q.target_;
    }

    int source_ = 0, target_ = 0;
    std::vector<int> arrows_;
};

/// compare(p, q) < 0 when p precedes q in the length-lex order: shorter paths
/// first; equal-length paths by arrow-label sequence; trivial paths by vertex.
int path_compare(const Quiver& q, const Path& a, const Path& b);

struct PathHash {
    std::size_t operator()(const Path& p) const {
        std::size_t h = std::hash<int>()(p.source()) * 31u + std::hash<int>()(p.target());
        for (int a : p.arrows()) h = h * 1000003u + static_cast<std::size_t>(a) + 1;
        return h;
    }
};

/// Concatenation when p.target == q.source; trivial paths are identities.
std::optional<Path> compose(const Path& p, const Path& q);

/// All paths of length <= max_len, ordered length-first then lexicographically
/// by arrow labels (trivial paths by vertex order).
std::vector<Path> paths_up_to(const Quiver& q, std::size_t max_len);

/// All paths of length exactly len, in the same order.
std::vector<Path> paths_of_length(const Quiver& q, std::size_t len);

/// An oriented cycle: a nontrivial path with source == target.
class Cycle {
public:
    explicit Cycle(Path p);
    const Path& path() const { return path_; }
    std::size_t length() const { return path_.length(); }
    bool operator==(const Cycle& o) const { return path_ == o.path_; }

private:
    Path path_;
};

/// The r rotations a_i...a_r a_1...a_{i-1} of the cycle, duplicates kept.
std::vector<Cycle> cyclic_permutations(const Quiver& q, const Cycle& c);

/// Starting vertices of the cycle's arrows.
std::set<int> support(const Quiver& q, const Cycle& c);

/// The shortest cycle d with c = d^k; c itself when primitive.
Cycle primitive_root(const Quiver& q, const Cycle& c);

/// Length-lex path order bound to a quiver, for ordered containers.
struct PathLess {
    const Quiver* q = nullptr;
    bool operator()(const Path& a, const Path& b) const { return path_compare(*q, a, b) < 0; }
};

/// Length-lex-descending order: greatest path first (reduction pivots).
struct PathGreater {
    const Quiver* q = nullptr;
    bool operator()(const Path& a, const Path& b) const { return path_compare(*q, a, b) > 0; }
};

using PathMap = std::map<Path, Scalar, PathLess>;

/// A formal linear combination of paths with exact coefficients. Zero
/// coefficients are never stored.
class PathVector {
public:
    explicit PathVector(const Quiver& q) : quiver_(&q), terms_(PathLess{&q}) {}

    void add_term(const Path& p, const Scalar& c);
    const PathMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const Quiver& quiver() const { return *quiver_; }

    std::string str() const;

private:
    const Quiver* quiver_;
    PathMap terms_;
};

} // namespace qalg
