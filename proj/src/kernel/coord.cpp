#include "pss/kernel/coord.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace pss {

namespace {

constexpr std::array<char, 4> kJetLetters = {'u', 'v', 'm', 'n'};

struct Named {
  const char* name;
  int id;
  CoordKind kind;
};

constexpr std::array<Named, 16> kNamed = {{
    {"x", slot::x, CoordKind::independent},
    {"t", slot::t, CoordKind::independent},
    {"z", slot::z, CoordKind::independent},
    {"phi1", slot::phi1, CoordKind::auxiliary},
    {"phi2", slot::phi2, CoordKind::auxiliary},
    {"phih1", slot::phih1, CoordKind::auxiliary},
    {"phih2", slot::phih2, CoordKind::auxiliary},
    {"p", slot::p, CoordKind::auxiliary},
    {"eta", slot::eta, CoordKind::parameter},
    {"delta", slot::delta, CoordKind::parameter},
    {"eps", slot::eps, CoordKind::parameter},
    {"u0", slot::u0, CoordKind::parameter},
    {"kk", slot::kk, CoordKind::parameter},
    {"theta", slot::theta, CoordKind::parameter},
    {"i", slot::imag, CoordKind::parameter},
    {"sqrt2", slot::sqrt2, CoordKind::parameter},
}};

}  // namespace

Coord Coord::jet(JetBase base, int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw std::out_of_range("jet order " + std::to_string(order) + " outside [0, " +
                            std::to_string(kMaxJetOrder) + "]");
  }
  return Coord(static_cast<std::uint8_t>(slot::jet0 + static_cast<int>(base) * slot::jet_span + order));
}

std::optional<Coord> Coord::from_name(std::string_view name) {
  for (const auto& n : kNamed) {
    if (name == n.name) return Coord(static_cast<std::uint8_t>(n.id));
  }
  if (name.empty()) return std::nullopt;
  for (std::size_t b = 0; b < kJetLetters.size(); ++b) {
    if (name[0] != kJetLetters[b]) continue;
    if (name.size() == 1) return jet(static_cast<JetBase>(b), 0);
    int order = 0;
    const char* first = name.data() + 1;
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, order);
    // "u0" is the seed parameter and was matched above; reject leading zeros.
    if (ec != std::errc() || ptr != last || name[1] == '0') return std::nullopt;
    if (order < 1 || order > kMaxJetOrder) return std::nullopt;
    return jet(static_cast<JetBase>(b), order);
  }
  return std::nullopt;
}

CoordKind Coord::kind() const {
  if (id_ <= slot::z) return CoordKind::independent;
  if (is_jet()) return CoordKind::jet;
  if (id_ < slot::eta) return CoordKind::auxiliary;
  if (id_ < slot::scratch0) return CoordKind::parameter;
  return CoordKind::scratch;
}

JetBase Coord::jet_base() const {
  if (!is_jet()) throw std::logic_error("not a jet coordinate: " + name());
  return static_cast<JetBase>((id_ - slot::jet0) / slot::jet_span);
}

int Coord::order() const { return is_jet() ? (id_ - slot::jet0) % slot::jet_span : 0; }

std::optional<Coord> Coord::shifted(int by) const {
  if (!is_jet()) return std::nullopt;
  const int k = order() + by;
  if (k < 0 || k > kMaxJetOrder) return std::nullopt;
  return jet(jet_base(), k);
}

std::string Coord::name() const {
  if (is_jet()) {
    std::string s(1, kJetLetters[static_cast<int>(jet_base())]);
    if (order() > 0) s += std::to_string(order());
    return s;
  }
  for (const auto& n : kNamed) {
    if (n.id == id_) return n.name;
  }
  return "_s" + std::to_string(id_ - slot::scratch0);
}

}  // namespace pss
