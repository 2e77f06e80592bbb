#include "qalg/quiver.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace qalg {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    std::set<std::string> seen_v(vertices_.begin(), vertices_.end());
    if (seen_v.size() != vertices_.size()) throw Error("duplicate vertex identifiers");
    std::set<std::string> seen_a;
    out_.assign(vertices_.size(), {});
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        const Arrow& a = arrows_[i];
        if (!seen_a.insert(a.label).second) throw Error("duplicate arrow label " + a.label);
        if (a.source < 0 || a.source >= vertex_count() || a.target < 0 ||
            a.target >= vertex_count())
            throw Error("arrow " + a.label + " has an undeclared endpoint");
        out_[static_cast<std::size_t>(a.source)].push_back(static_cast<int>(i));
    }
}

int Quiver::vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i] == name) return static_cast<int>(i);
    return -1;
}

int Quiver::arrow_index(const std::string& label) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i)
        if (arrows_[i].label == label) return static_cast<int>(i);
    return -1;
}

Quiver Quiver::opposite() const {
    std::vector<Arrow> rev;
    rev.reserve(arrows_.size());
    for (const Arrow& a : arrows_) rev.push_back(Arrow{a.label, a.target, a.source});
    return Quiver(vertices_, std::move(rev));
}

bool Quiver::operator==(const Quiver& o) const {
    if (vertices_ != o.vertices_ || arrows_.size() != o.arrows_.size()) return false;
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        const Arrow &a = arrows_[i], &b = o.arrows_[i];
        if (a.label != b.label || a.source != b.source || a.target != b.target) return false;
    }
    return true;
}

Path Path::of_arrow(const Quiver& q, int arrow_index) {
    Path p;
    const Arrow& a = q.arrow(arrow_index);
    p.source_ = a.source;
    p.target_ = a.target;
    p.arrows_ = {arrow_index};
    return p;
}

Path Path::word(const Quiver& q, const std::vector<int>& arrow_indices) {
    if (arrow_indices.empty()) throw Error("empty word has no endpoints");
    Path p = of_arrow(q, arrow_indices[0]);
    for (std::size_t i = 1; i < arrow_indices.size(); ++i) {
        const Arrow& a = q.arrow(arrow_indices[i]);
        if (a.source != p.target_)
            throw Error("word is not composable at " + a.label);
        p.arrows_.push_back(arrow_indices[i]);
        p.target_ = a.target;
    }
    return p;
}

std::string Path::str(const Quiver& q) const {
    if (is_trivial()) return "e_" + q.vertex_name(source_);
    std::string out;
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
        if (i) out += "*";
        out += q.arrow(arrows_[i]).label;
    }
    return out;
}

int path_compare(const Quiver& q, const Path& a, const Path& b) {
    if (a.length() != b.length()) return a.length() < b.length() ? -1 : 1;
    if (a.is_trivial()) {
        if (a.source() != b.source()) return a.source() < b.source() ? -1 : 1;
        return 0;
    }
    for (std::size_t i = 0; i < a.length(); ++i) {
        const std::string& la = q.arrow(a.arrows()[i]).label;
        const std::string& lb = q.arrow(b.arrows()[i]).label;
        int c = la.compare(lb);
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::optional<Path> compose(const Path& p, const Path& q) {
    if (p.target() != q.source()) return std::nullopt;
    if (p.is_trivial()) return q;
    if (q.is_trivial()) return p;
    Path r = p;
    r.append_unchecked(q);
    return r;
}

std::vector<Path> paths_of_length(const Quiver& q, std::size_t len) {
    std::vector<Path> out;
    if (len == 0) {
        for (int v = 0; v < q.vertex_count(); ++v) out.push_back(Path::trivial(v));
        return out;
    }
    // label-sorted arrow order gives lexicographic enumeration directly
    std::vector<int> order(static_cast<std::size_t>(q.arrow_count()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return q.arrow(a).label < q.arrow(b).label; });
    std::vector<int> word;
    std::function<void(int)> extend = [&](int at) {
        if (word.size() == len) {
            out.push_back(Path::word(q, word));
            return;
        }
        for (int a : order) {
            if (q.arrow(a).source != at) continue;
            word.push_back(a);
            extend(q.arrow(a).target);
            word.pop_back();
        }
    };
    for (int a : order) {
        word.assign(1, a);
        extend(q.arrow(a).target);
    }
    return out;
}

std::vector<Path> paths_up_to(const Quiver& q, std::size_t max_len) {
    std::vector<Path> out;
    for (std::size_t l = 0; l <= max_len; ++l) {
        std::vector<Path> layer = paths_of_length(q, l);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

Cycle::Cycle(Path p) : path_(std::move(p)) {
    if (path_.is_trivial() || path_.source() != path_.target())
        throw Error("a cycle must be a nontrivial path with equal endpoints");
}

std::vector<Cycle> cyclic_permutations(const Quiver& q, const Cycle& c) {
    std::vector<Cycle> out;
    const std::vector<int>& w = c.path().arrows();
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::vector<int> rot(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        out.emplace_back(Path::word(q, rot));
    }
    return out;
}

std::set<int> support(const Quiver& q, const Cycle& c) {
    std::set<int> out;
    for (int a : c.path().arrows()) out.insert(q.arrow(a).source);
    return out;
}

Cycle primitive_root(const Quiver& q, const Cycle& c) {
    const std::vector<int>& w = c.path().arrows();
    std::size_t n = w.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = 0; i + d < n && periodic; ++i)
            if (w[i] != w[i + d]) periodic = false;
        if (periodic) {
            std::vector<int> root(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
            return Cycle(Path::word(q, root));
        }
    }
    return c;
}

void PathVector::add_term(const Path& p, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(p, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::string PathVector::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, c] : terms_) {
        std::string coeff = c.str();
        if (!first) out << (coeff[0] == '-' ? " - " : " + ");
        if (first && coeff[0] == '-') out << "-";
        std::string mag = coeff[0] == '-' ? coeff.substr(1) : coeff;
        if (mag != "1") out << mag << " ";
        out << p.str(*quiver_);
        first = false;
    }
    return out.str();
}

} // namespace qalg
