#include "heisflow/locus.hpp"

#include "heisflow/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace heisflow {

namespace {

struct Node {
    double u, v;
    double n1, n2, norm;
    bool zero;
};

using Key = std::int64_t;

class LocusBuilder {
public:
    LocusBuilder(const SurfaceHandle& s, const LocusOptions& o)
        : s_(s), o_(o), nu_(std::max(2, o.grid.nu)), nv_(std::max(2, o.grid.nv))
    {
        const Domain& d = s.domain();
        nodes_.reserve(static_cast<std::size_t>(nu_) * nv_);
        for (int i = 0; i < nu_; ++i) {
            for (int k = 0; k < nv_; ++k) {
                const double u = grid_coordinate(d.u_min, d.u_max, i, nu_);
                const double v = grid_coordinate(d.v_min, d.v_max, k, nv_);
                const Jet2 j = s.eval_jet2(u, v);
                const HorizontalNormal n = horizontal_normal(j);
                const bool zero = !(n.norm >= resolve_eps_char(j, o.eps_char));
                nodes_.push_back({u, v, n.n1, n.n2, n.norm, zero});
            }
        }
    }

    LocusResult run()
    {
        for (int i = 0; i < nu_; ++i)
            for (int k = 0; k < nv_; ++k)
                if (node(i, k).zero && node(i, k).norm <= o_.accept)
                    add_point(node_key(i, k), node(i, k).u, node(i, k).v);

        for (int i = 0; i < nu_; ++i) {
            for (int k = 0; k < nv_; ++k) {
                if (i + 1 < nu_)
                    edge(u_edge_key(i, k), node(i, k), node(i + 1, k));
                if (k + 1 < nv_)
                    edge(v_edge_key(i, k), node(i, k), node(i, k + 1));
            }
        }

        for (int i = 0; i + 1 < nu_; ++i)
            for (int k = 0; k + 1 < nv_; ++k)
                cell(i, k);

        return chain();
    }

private:
    const Node& node(int i, int k) const { return nodes_[static_cast<std::size_t>(i) * nv_ + k]; }
    Key node_key(int i, int k) const { return static_cast<Key>(i) * nv_ + k; }
    Key u_edge_key(int i, int k) const { return block() + node_key(i, k); }
    Key v_edge_key(int i, int k) const { return 2 * block() + node_key(i, k); }
    Key cell_key(int i, int k) const { return 3 * block() + node_key(i, k); }
    Key block() const { return static_cast<Key>(nu_) * nv_; }

    void add_point(Key key, double u, double v)
    {
        const Jet2 j = s_.eval_jet2(u, v);
        points_[key] = {u, v, j.value, horizontal_normal(j).norm};
    }

    double g(const Node& a, const Node& b, double tau) const
    {
        const double u = a.u + tau * (b.u - a.u);
        const double v = a.v + tau * (b.v - a.v);
        const HorizontalNormal n = horizontal_normal(s_.eval_jet2(u, v));
        return n.n1 * a.n1 + n.n2 * a.n2;
    }

    void edge(Key key, const Node& a, const Node& b)
    {
        if (a.zero || b.zero)
            return;
        if (!(a.n1 * b.n1 + a.n2 * b.n2 < 0.0))
            return;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < o_.bisect_iterations; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (g(a, b, mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        const double tau = 0.5 * (lo + hi);
        const double u = a.u + tau * (b.u - a.u);
        const double v = a.v + tau * (b.v - a.v);
        if (horizontal_normal(s_.eval_jet2(u, v)).norm <= o_.accept)
            add_point(key, u, v);
    }

    void cell(int i, int k)
    {
        // counter-clockwise: bottom, right, top, left
        const Key corners[4] = {node_key(i, k), node_key(i + 1, k), node_key(i + 1, k + 1), node_key(i, k + 1)};
        const Key ring[8] = {corners[0], u_edge_key(i, k), corners[1], v_edge_key(i + 1, k),
                             corners[2], u_edge_key(i, k + 1), corners[3], v_edge_key(i, k)};
        std::vector<Key> hits;
        for (Key key : ring)
            if (points_.count(key))
                hits.push_back(key);

        if (hits.size() >= 2) {
            for (std::size_t m = 0; m + 1 < hits.size(); m += 2)
                add_segment(hits[m], hits[m + 1]);
            if (hits.size() % 2 == 1 && hits.size() > 2)
                add_segment(hits[hits.size() - 2], hits.back());
            return;
        }
        if (!hits.empty())
            return;
        newton(i, k);
    }

    void add_segment(Key a, Key b)
    {
        if (a == b)
            return;
        segments_.insert(std::minmax(a, b));
    }

    void newton(int i, int k)
    {
        const Node* c[4] = {&node(i, k), &node(i + 1, k), &node(i + 1, k + 1), &node(i, k + 1)};
        bool n1_pos = false, n1_neg = false, n2_pos = false, n2_neg = false;
        for (const Node* n : c) {
            n1_pos |= n->n1 > 0.0;
            n1_neg |= n->n1 < 0.0;
            n2_pos |= n->n2 > 0.0;
            n2_neg |= n->n2 < 0.0;
        }
        if (!(n1_pos && n1_neg && n2_pos && n2_neg))
            return;

        const double u0 = c[0]->u, u1 = c[1]->u, v0 = c[0]->v, v1 = c[3]->v;
        const double su = u1 - u0, sv = v1 - v0;
        double u = 0.5 * (u0 + u1), v = 0.5 * (v0 + v1);
        for (int it = 0; it < 50; ++it) {
            const HorizontalNormalJet n = horizontal_normal_jet(s_.eval_jet2(u, v));
            const double det = n.n1_u * n.n2_v - n.n1_v * n.n2_u;
            if (!(std::abs(det) > 0.0))
                return;
            const double du = (n.n2_v * n.n1 - n.n1_v * n.n2) / det;
            const double dv = (-n.n2_u * n.n1 + n.n1_u * n.n2) / det;
            u -= du;
            v -= dv;
            if (u < u0 - 0.5 * su || u > u1 + 0.5 * su || v < v0 - 0.5 * sv || v > v1 + 0.5 * sv)
                return;
            if (std::abs(du) <= 1e-15 * std::max(1.0, std::abs(u)) && std::abs(dv) <= 1e-15 * std::max(1.0, std::abs(v)))
                break;
        }
        // half-open cell so a root on a shared edge is kept once
        const bool u_last = i + 2 == nu_, v_last = k + 2 == nv_;
        if (u < u0 || (u_last ? u > u1 : u >= u1) || v < v0 || (v_last ? v > v1 : v >= v1))
            return;
        if (horizontal_normal(s_.eval_jet2(u, v)).norm > o_.accept)
            return;
        add_point(cell_key(i, k), u, v);
    }

    LocusResult chain() const
    {
        std::map<Key, std::vector<Key>> adj;
        for (const auto& [a, b] : segments_) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::set<std::pair<Key, Key>> used;
        LocusResult r;
        r.surface = s_.name();

        const auto walk = [&](Key start) {
            std::vector<LocusPoint> line{points_.at(start)};
            Key cur = start;
            for (;;) {
                bool moved = false;
                for (Key next : adj.at(cur)) {
                    const auto seg = std::minmax(cur, next);
                    if (used.count(seg))
                        continue;
                    used.insert(seg);
                    line.push_back(points_.at(next));
                    cur = next;
                    moved = true;
                    break;
                }
                if (!moved)
                    break;
            }
            r.polylines.push_back(std::move(line));
        };

        const auto has_free = [&](Key key) {
            for (Key next : adj.at(key))
                if (!used.count(std::minmax(key, next)))
                    return true;
            return false;
        };

        // open chains start at ends or branch points, then the closed loops
        for (const auto& [key, nbrs] : adj)
            while (nbrs.size() != 2 && has_free(key))
                walk(key);
        for (const auto& [key, nbrs] : adj)
            while (has_free(key))
                walk(key);
        for (const auto& [key, p] : points_)
            if (!adj.count(key))
                r.polylines.push_back({p});
        return r;
    }

    const SurfaceHandle& s_;
    const LocusOptions& o_;
    int nu_, nv_;
    std::vector<Node> nodes_;
    std::map<Key, LocusPoint> points_;
    std::set<std::pair<Key, Key>> segments_;
};

} // namespace

std::size_t LocusResult::point_count() const
{
    std::size_t n = 0;
    for (const auto& line : polylines)
        n += line.size();
    return n;
}

LocusResult find_characteristic_locus(const SurfaceHandle& s, const LocusOptions& opts)
{
    return LocusBuilder(s, opts).run();
}

std::string locus_to_json(const LocusResult& r)
{
    nlohmann::ordered_json doc;
    doc["surface"] = r.surface;
    doc["point_count"] = r.point_count();
    nlohmann::ordered_json lines = nlohmann::ordered_json::array();
    for (const auto& line : r.polylines) {
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        for (const LocusPoint& p : line)
            pts.push_back({{"u", p.u}, {"v", p.v}, {"x", p.point.x}, {"y", p.point.y}, {"t", p.point.t},
                           {"norm_nh", p.normal_norm}});
        lines.push_back(pts);
    }
    doc["polylines"] = lines;
    return doc.dump(2) + "\n";
}

std::string locus_to_csv(const LocusResult& r)
{
    std::ostringstream os;
    os << "polyline,index,u,v,x,y,t,norm_nh\n";
    for (std::size_t l = 0; l < r.polylines.size(); ++l) {
        const auto& line = r.polylines[l];
        for (std::size_t i = 0; i < line.size(); ++i) {
            const LocusPoint& p = line[i];
            os << l << ',' << i << ',' << format_number(p.u) << ',' << format_number(p.v) << ','
               << format_number(p.point.x) << ',' << format_number(p.point.y) << ',' << format_number(p.point.t) << ','
               << format_number(p.normal_norm) << '\n';
        }
    }
    return os.str();
}

} // namespace heisflow
