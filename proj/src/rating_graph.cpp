#include "rankforge/rating_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace rankforge {

namespace {

Index intern(std::vector<std::string>& ids, std::unordered_map<std::string, Index>& lookup,
             const std::string& id) {
    auto [it, inserted] = lookup.try_emplace(id, static_cast<Index>(ids.size()));
    if (inserted) ids.push_back(id);
    return it->second;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

RatingGraph::RatingGraph(int r_bot, int r_top, std::vector<RatingEntry> entries,
                         std::vector<std::string> users)
    : r_bot_(r_bot), r_top_(r_top) {
    if (r_bot < 1 || r_bot >= r_top) {
        throw DomainError("rating bounds must satisfy 1 <= r_bot < r_top");
    }
    for (const auto& id : users) {
        if (id.empty()) throw DomainError("empty user id");
        intern(user_ids_, user_lookup_, id);
    }
    std::unordered_map<std::uint64_t, std::size_t> seen;  // (user, item) -> slot in ratings_
    for (const auto& e : entries) {
        if (e.user.empty() || e.item.empty()) throw DomainError("empty user or item id");
        if (!(e.value > 0.0 && e.value <= 1.0 + 1e-12)) {
            throw DomainError("rating " + format_number(e.value) + " for (" + e.user + ", " + e.item +
                              ") outside ]0,1]");
        }
        Index u = intern(user_ids_, user_lookup_, e.user);
        Index i = intern(item_ids_, item_lookup_, e.item);
        Rating r{u, i, std::min(e.value, 1.0), e.timestamp};
        auto key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(i);
        auto [it, inserted] = seen.try_emplace(key, ratings_.size());
        if (inserted) {
            ratings_.push_back(r);
        } else if (r.timestamp >= ratings_[it->second].timestamp) {
            ratings_[it->second] = r;
        }
    }

    by_user_.assign(user_ids_.size(), {});
    by_item_.assign(item_ids_.size(), {});
    std::vector<Eigen::Triplet<double>> values, ones;
    values.reserve(ratings_.size());
    ones.reserve(ratings_.size());
    for (const auto& r : ratings_) {
        by_user_[static_cast<std::size_t>(r.user)].push_back({r.item, r.value});
        by_item_[static_cast<std::size_t>(r.item)].push_back({r.user, r.value});
        values.emplace_back(r.user, r.item, r.value);
        ones.emplace_back(r.user, r.item, 1.0);
    }
    auto by_index = [](const Link& a, const Link& b) { return a.index < b.index; };
    for (auto& l : by_user_) std::sort(l.begin(), l.end(), by_index);
    for (auto& l : by_item_) std::sort(l.begin(), l.end(), by_index);

    values_.resize(num_users(), num_items());
    pattern_.resize(num_users(), num_items());
    values_.setFromTriplets(values.begin(), values.end());
    pattern_.setFromTriplets(ones.begin(), ones.end());
}

std::optional<Index> RatingGraph::find_user(std::string_view id) const {
    auto it = user_lookup_.find(std::string(id));
    if (it == user_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<Index> RatingGraph::find_item(std::string_view id) const {
    auto it = item_lookup_.find(std::string(id));
    if (it == item_lookup_.end()) return std::nullopt;
    return it->second;
}

Index RatingGraph::user_index(std::string_view id) const {
    if (auto u = find_user(id)) return *u;
    throw LookupError("unknown user '" + std::string(id) + "'");
}

Index RatingGraph::item_index(std::string_view id) const {
    if (auto i = find_item(id)) return *i;
    throw LookupError("unknown item '" + std::string(id) + "'");
}

std::vector<double> RatingGraph::rating_grid() const {
    std::vector<double> grid;
    for (int v = r_bot_; v <= r_top_; ++v) grid.push_back(static_cast<double>(v) / r_top_);
    return grid;
}

std::optional<double> RatingGraph::rating(Index u, Index i) const {
    auto list = items_of(u);
    auto it = std::lower_bound(list.begin(), list.end(), i,
                               [](const Link& l, Index target) { return l.index < target; });
    if (it == list.end() || it->index != i) return std::nullopt;
    return it->value;
}

std::vector<RatingEntry> RatingGraph::entries() const {
    std::vector<RatingEntry> out;
    out.reserve(ratings_.size());
    for (const auto& r : ratings_) {
        out.push_back({user_ids_[static_cast<std::size_t>(r.user)],
                       item_ids_[static_cast<std::size_t>(r.item)], r.value, r.timestamp});
    }
    return out;
}

RatingGraph RatingGraph::subgraph(std::span<const Index> users) const {
    std::vector<char> keep(user_ids_.size(), 0);
    std::vector<std::string> order;
    order.reserve(users.size());
    for (Index u : users) {
        keep.at(static_cast<std::size_t>(u)) = 1;
        order.push_back(user_ids_[static_cast<std::size_t>(u)]);
    }
    std::vector<RatingEntry> sub;
    for (const auto& r : ratings_) {
        if (keep[static_cast<std::size_t>(r.user)]) {
            sub.push_back({user_ids_[static_cast<std::size_t>(r.user)],
                           item_ids_[static_cast<std::size_t>(r.item)], r.value, r.timestamp});
        }
    }
    return RatingGraph(r_bot_, r_top_, std::move(sub), std::move(order));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    double rounded = std::round(v);
    if (rounded == v && std::abs(v) < 1e15) {
        return std::to_string(static_cast<long long>(rounded));
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

RatingGraph read_ratings_csv(std::istream& in, int r_bot, int r_top) {
    if (r_bot < 1 || r_bot >= r_top) throw DomainError("rating bounds must satisfy 1 <= r_bot < r_top");
    std::vector<RatingEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        if (first_data_line) {
            first_data_line = false;
            if (view.rfind("user_id", 0) == 0) continue;
        }
        auto fields = split_fields(view);
        if (fields.size() != 3 && fields.size() != 4) {
            throw ParseError("expected user_id,item_id,rating,timestamp", line_no);
        }
        if (fields[0].empty() || fields[1].empty()) throw ParseError("empty user or item id", line_no);

        double raw = 0.0;
        auto [p, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), raw);
        if (ec != std::errc{} || p != fields[2].data() + fields[2].size() || !std::isfinite(raw)) {
            throw ParseError("rating '" + std::string(fields[2]) + "' is not a number", line_no);
        }
        if (raw != std::round(raw)) {
            throw ParseError("rating '" + std::string(fields[2]) + "' is not an integer", line_no);
        }
        if (raw < r_bot || raw > r_top) {
            throw DomainError("line " + std::to_string(line_no) + ": rating " + format_number(raw) +
                              " outside [" + std::to_string(r_bot) + "," + std::to_string(r_top) + "]");
        }
        std::int64_t ts = 0;
        if (fields.size() == 4 && !fields[3].empty()) {
            auto [tp, tec] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), ts);
            if (tec != std::errc{} || tp != fields[3].data() + fields[3].size()) {
                throw ParseError("timestamp '" + std::string(fields[3]) + "' is not an integer", line_no);
            }
        }
        entries.push_back({std::string(fields[0]), std::string(fields[1]), raw / r_top, ts});
    }
    return RatingGraph(r_bot, r_top, std::move(entries));
}

RatingGraph ingest(const std::filesystem::path& path, int r_bot, int r_top) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    return read_ratings_csv(in, r_bot, r_top);
}

void write_ratings_csv(const RatingGraph& g, std::ostream& out) {
    out << "user_id,item_id,rating,timestamp\n";
    for (const auto& r : g.ratings()) {
        double raw = r.value * g.r_top();
        if (std::abs(raw - std::round(raw)) < 1e-9) raw = std::round(raw);
        out << g.user_id(r.user) << ',' << g.item_id(r.item) << ',' << format_number(raw) << ','
            << r.timestamp << '\n';
    }
}

std::optional<Index> ItemPopularity::most_voted() const {
    if (counts.empty()) return std::nullopt;
    auto it = std::max_element(counts.begin(), counts.end());  // first maximum
    return static_cast<Index>(it - counts.begin());
}

std::vector<Index> ItemPopularity::by_popularity() const {
    std::vector<Index> order(counts.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return counts[static_cast<std::size_t>(a)] > counts[static_cast<std::size_t>(b)];
    });
    return order;
}

ItemPopularity popularity(const RatingGraph& g) {
    ItemPopularity p;
    p.counts.resize(static_cast<std::size_t>(g.num_items()));
    for (Index i = 0; i < g.num_items(); ++i) {
        auto n = static_cast<Index>(g.raters_of(i).size());
        p.counts[static_cast<std::size_t>(i)] = n;
        ++p.ratings_per_item[n];
        p.total += n;
    }
    return p;
}

}  // namespace rankforge
