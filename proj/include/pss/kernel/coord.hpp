#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pss {

enum class CoordKind : std::uint8_t { independent, jet, parameter, auxiliary, scratch };

enum class JetBase : std::uint8_t { u, v, m, n };

inline constexpr int kMaxJetOrder = 12;

// Variable slots. The slot index doubles as the lexicographic rank used by
// the monomial order, so x is the most significant variable.
namespace slot {
inline constexpr int x = 0;
inline constexpr int t = 1;
inline constexpr int z = 2;
inline constexpr int jet0 = 3;
inline constexpr int jet_span = kMaxJetOrder + 1;
inline constexpr int phi1 = jet0 + 4 * jet_span;
inline constexpr int phi2 = phi1 + 1;
inline constexpr int phih1 = phi1 + 2;
inline constexpr int phih2 = phi1 + 3;
inline constexpr int p = phi1 + 4;
inline constexpr int eta = phi1 + 5;
inline constexpr int delta = eta + 1;
inline constexpr int eps = eta + 2;
inline constexpr int u0 = eta + 3;
inline constexpr int kk = eta + 4;
inline constexpr int theta = eta + 5;
inline constexpr int imag = eta + 6;
inline constexpr int sqrt2 = eta + 7;
inline constexpr int scratch0 = eta + 8;
inline constexpr int scratch_count = 8;
inline constexpr int count = scratch0 + scratch_count;
}  // namespace slot

inline constexpr int kNumVars = slot::count;

class Coord {
 public:
  constexpr Coord() = default;
  constexpr explicit Coord(std::uint8_t id) : id_(id) {}

  static Coord x() { return Coord(slot::x); }
  static Coord t() { return Coord(slot::t); }
  static Coord z() { return Coord(slot::z); }
  static Coord jet(JetBase base, int order);
  static Coord u(int order = 0) { return jet(JetBase::u, order); }
  static Coord v(int order = 0) { return jet(JetBase::v, order); }
  static Coord m(int order = 0) { return jet(JetBase::m, order); }
  static Coord n(int order = 0) { return jet(JetBase::n, order); }
  static Coord phi1() { return Coord(slot::phi1); }
  static Coord phi2() { return Coord(slot::phi2); }
  static Coord phih1() { return Coord(slot::phih1); }
  static Coord phih2() { return Coord(slot::phih2); }
  static Coord p() { return Coord(slot::p); }
  static Coord eta() { return Coord(slot::eta); }
  static Coord delta() { return Coord(slot::delta); }
  static Coord eps() { return Coord(slot::eps); }
  static Coord u0() { return Coord(slot::u0); }
  static Coord kk() { return Coord(slot::kk); }
  static Coord theta() { return Coord(slot::theta); }
  static Coord imag() { return Coord(slot::imag); }
  static Coord sqrt2() { return Coord(slot::sqrt2); }
  static Coord scratch(int i) { return Coord(static_cast<std::uint8_t>(slot::scratch0 + i)); }

  // Accepts canonical names ("u", "u3", "m1", "phih2", "eta", ...).
  static std::optional<Coord> from_name(std::string_view name);

  constexpr std::uint8_t id() const { return id_; }
  CoordKind kind() const;
  std::string name() const;

  bool is_jet() const { return id_ >= slot::jet0 && id_ < slot::phi1; }
  JetBase jet_base() const;
  int order() const;  // jet order, 0 for everything else
  // Same base, order + by; nullopt when beyond kMaxJetOrder or negative.
  std::optional<Coord> shifted(int by) const;

  bool is_parameter() const { return kind() == CoordKind::parameter; }

  friend constexpr bool operator==(Coord a, Coord b) { return a.id_ == b.id_; }
  friend constexpr auto operator<=>(Coord a, Coord b) { return a.id_ <=> b.id_; }

 private:
  std::uint8_t id_ = 0;
};

}  // namespace pss
