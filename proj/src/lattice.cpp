#include "qlbm/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <stdexcept>

namespace qlbm {

bool LatticeDescriptor::is_rest(int j) const {
    const auto& e = velocities.at(static_cast<std::size_t>(j));
    return std::all_of(e.begin(), e.end(), [](int c) { return c == 0; });
}

bool LatticeDescriptor::has_rest() const {
    for (int j = 0; j < num_directions(); ++j)
        if (is_rest(j)) return true;
    return false;
}

std::vector<int> LatticeDescriptor::moving_directions() const {
    std::vector<int> dirs;
    for (int j = 0; j < num_directions(); ++j)
        if (!is_rest(j)) dirs.push_back(j);
    return dirs;
}

int LatticeDescriptor::opposite_direction(int j) const {
    const auto& e = velocities.at(static_cast<std::size_t>(j));
    std::vector<int> neg(e.size());
    for (std::size_t a = 0; a < e.size(); ++a) neg[a] = -e[a];
    for (int k = 0; k < num_directions(); ++k)
        if (velocities[static_cast<std::size_t>(k)] == neg) return k;
    throw std::logic_error("descriptor has no opposite for direction " + std::to_string(j));
}

LatticeDescriptor build_descriptor(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });

    LatticeDescriptor d;
    d.name = upper;
    if (upper == "D1Q2") {
        d.dimension = 1;
        d.velocities = {{+1}, {-1}};
    } else if (upper == "D1Q3") {
        d.dimension = 1;
        d.velocities = {{+1}, {-1}, {0}};
    } else if (upper == "D2Q4") {
        d.dimension = 2;
        d.velocities = {{+1, 0}, {0, +1}, {-1, 0}, {0, -1}};
    } else if (upper == "D2Q5") {
        d.dimension = 2;
        d.velocities = {{+1, 0}, {0, +1}, {-1, 0}, {0, -1}, {0, 0}};
    } else {
        throw std::invalid_argument("unknown lattice \"" + std::string(name) +
                                    "\" (supported: D1Q2, D1Q3, D2Q4, D2Q5)");
    }
    return d;
}

std::string pattern_to_string(std::uint32_t pattern, int num_directions) {
    std::string s(static_cast<std::size_t>(num_directions), '0');
    for (int j = 0; j < num_directions; ++j)
        if (pattern_bit(pattern, num_directions, j)) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

std::uint32_t pattern_from_string(std::string_view text) {
    std::uint32_t p = 0;
    for (char c : text) {
        if (c != '0' && c != '1') throw std::invalid_argument("pattern must be binary digits");
        p = (p << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return p;
}

bool MassMomentum::operator<(const MassMomentum& other) const {
    if (mass != other.mass) return mass < other.mass;
    return momentum < other.momentum;
}

MassMomentum mass_momentum(std::uint32_t pattern, const LatticeDescriptor& descriptor) {
    const int m = descriptor.num_directions();
    MassMomentum r;
    r.momentum.assign(static_cast<std::size_t>(descriptor.dimension), 0);
    for (int j = 0; j < m; ++j) {
        if (!pattern_bit(pattern, m, j)) continue;
        ++r.mass;
        const auto& e = descriptor.velocities[static_cast<std::size_t>(j)];
        for (int a = 0; a < descriptor.dimension; ++a)
            r.momentum[static_cast<std::size_t>(a)] += e[static_cast<std::size_t>(a)];
    }
    return r;
}

std::optional<std::uint32_t> EquivalenceClassTable::swap_partner(std::uint32_t pattern) const {
    const auto& cls = class_of_pattern(pattern);
    if (cls.size() != 2) return std::nullopt;
    return cls[0] == pattern ? cls[1] : cls[0];
}

EquivalenceClassTable equivalence_classes(const LatticeDescriptor& descriptor) {
    const int m = descriptor.num_directions();
    const std::uint32_t count = 1u << m;

    std::map<MassMomentum, std::vector<std::uint32_t>> grouped;
    for (std::uint32_t p = 0; p < count; ++p)
        grouped[mass_momentum(p, descriptor)].push_back(p);

    EquivalenceClassTable table;
    table.descriptor = descriptor;
    table.class_of.assign(count, 0);
    for (auto& [key, members] : grouped) {
        std::sort(members.begin(), members.end());
        for (std::uint32_t p : members) table.class_of[p] = table.classes.size();
        table.classes.push_back(std::move(members));
    }
    return table;
}

OccupancyField::OccupancyField(LatticeDescriptor descriptor, std::vector<int> extents)
    : descriptor_(std::move(descriptor)), extents_(std::move(extents)) {
    if (static_cast<int>(extents_.size()) != descriptor_.dimension)
        throw std::invalid_argument("extents rank does not match lattice dimension");
    num_sites_ = 1;
    for (int L : extents_) {
        if (L <= 0) throw std::invalid_argument("grid extents must be positive");
        num_sites_ *= static_cast<std::size_t>(L);
    }
    bits_.assign(num_sites_ * static_cast<std::size_t>(descriptor_.num_directions()), 0);
}

bool OccupancyField::get(std::size_t site, int direction) const {
    return bits_.at(site * static_cast<std::size_t>(descriptor_.num_directions()) +
                    static_cast<std::size_t>(direction)) != 0;
}

void OccupancyField::set(std::size_t site, int direction, bool value) {
    bits_.at(site * static_cast<std::size_t>(descriptor_.num_directions()) +
             static_cast<std::size_t>(direction)) = value ? 1 : 0;
}

std::uint32_t OccupancyField::local_pattern(std::size_t site) const {
    const int m = descriptor_.num_directions();
    std::uint32_t p = 0;
    for (int j = 0; j < m; ++j) p = pattern_with_bit(p, m, j, get(site, j));
    return p;
}

void OccupancyField::set_local_pattern(std::size_t site, std::uint32_t pattern) {
    const int m = descriptor_.num_directions();
    for (int j = 0; j < m; ++j) set(site, j, pattern_bit(pattern, m, j));
}

std::size_t OccupancyField::site_index(const std::vector<int>& coords) const {
    if (coords.size() != extents_.size())
        throw std::invalid_argument("coordinate rank mismatch");
    std::size_t site = 0;
    for (std::size_t a = extents_.size(); a-- > 0;) {
        const int L = extents_[a];
        int c = coords[a] % L;
        if (c < 0) c += L;
        site = site * static_cast<std::size_t>(L) + static_cast<std::size_t>(c);
    }
    return site;
}

std::vector<int> OccupancyField::site_coords(std::size_t site) const {
    std::vector<int> coords(extents_.size());
    for (std::size_t a = 0; a < extents_.size(); ++a) {
        coords[a] = static_cast<int>(site % static_cast<std::size_t>(extents_[a]));
        site /= static_cast<std::size_t>(extents_[a]);
    }
    return coords;
}

std::size_t OccupancyField::shifted_site(std::size_t site, const std::vector<int>& delta) const {
    auto coords = site_coords(site);
    for (std::size_t a = 0; a < coords.size(); ++a) coords[a] += delta[a];
    return site_index(coords);
}

std::size_t OccupancyField::total_mass() const {
    std::size_t mass = 0;
    for (std::uint8_t b : bits_) mass += b;
    return mass;
}

std::vector<int> OccupancyField::total_momentum() const {
    std::vector<int> p(static_cast<std::size_t>(descriptor_.dimension), 0);
    const int m = descriptor_.num_directions();
    for (std::size_t site = 0; site < num_sites_; ++site)
        for (int j = 0; j < m; ++j)
            if (get(site, j))
                for (int a = 0; a < descriptor_.dimension; ++a)
                    p[static_cast<std::size_t>(a)] +=
                        descriptor_.velocities[static_cast<std::size_t>(j)]
                                              [static_cast<std::size_t>(a)];
    return p;
}

OccupancyField stream_classical(const OccupancyField& field) {
    OccupancyField out(field.descriptor(), field.extents());
    const int m = field.descriptor().num_directions();
    std::vector<int> neg(static_cast<std::size_t>(field.descriptor().dimension));
    for (int j = 0; j < m; ++j) {
        const auto& e = field.descriptor().velocities[static_cast<std::size_t>(j)];
        for (std::size_t a = 0; a < neg.size(); ++a) neg[a] = -e[a];
        for (std::size_t site = 0; site < field.num_sites(); ++site)
            out.set(site, j, field.get(field.shifted_site(site, neg), j));
    }
    return out;
}

std::uint32_t collide_pattern(std::uint32_t pattern, const EquivalenceClassTable& table,
                              CollisionRule rule) {
    if (rule == CollisionRule::Identity) return pattern;
    if (auto partner = table.swap_partner(pattern)) return *partner;
    return pattern;
}

OccupancyField collide_classical(const OccupancyField& field, CollisionRule rule) {
    OccupancyField out = field;
    if (rule == CollisionRule::Identity) return out;
    const auto table = equivalence_classes(field.descriptor());
    for (std::size_t site = 0; site < field.num_sites(); ++site)
        out.set_local_pattern(site, collide_pattern(field.local_pattern(site), table, rule));
    return out;
}

} // namespace qlbm
