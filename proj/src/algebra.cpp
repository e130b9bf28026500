#include "latclone/algebra.hpp"

#include "latclone/error.hpp"

namespace latclone {

const char* to_string(Mode mode) noexcept {
  return mode == Mode::lattice ? "lattice" : "semilattice";
}

Mode parse_mode(const std::string& text) {
  if (text == "lattice") return Mode::lattice;
  if (text == "semilattice") return Mode::semilattice;
  throw Error(Errc::bad_spec, "mode must be 'lattice' or 'semilattice', got '" + text + "'");
}

TermAlgebra::TermAlgebra(Mode mode, std::vector<std::string> names, BinaryTable meet,
                         std::optional<BinaryTable> join, Elem bottom, std::optional<Elem> top)
    : mode_(mode), names_(std::move(names)), meet_(std::move(meet)), join_(std::move(join)),
      bottom_(bottom), top_(top) {}

TermAlgebra TermAlgebra::lattice(const FiniteLattice& L) {
  return TermAlgebra(Mode::lattice, L.names(), L.meet_table(), L.join_table(), L.bottom(),
                     L.top());
}

TermAlgebra TermAlgebra::semilattice(const FiniteSemilattice& M) {
  return TermAlgebra(Mode::semilattice, M.names(), M.meet_table(), std::nullopt, M.bottom(),
                     M.top());
}

TermAlgebra TermAlgebra::semilattice(const FiniteLattice& L) {
  return TermAlgebra(Mode::semilattice, L.names(), L.meet_table(), std::nullopt, L.bottom(),
                     L.top());
}

Elem TermAlgebra::join(Elem x, Elem y) const {
  if (!join_) throw Error(Errc::join_in_semilattice_mode, "join used in semilattice mode");
  return (*join_)(x, y);
}

std::vector<OpTable> TermAlgebra::generators() const {
  const auto n = size();
  std::vector<OpTable> gens;
  gens.emplace_back(2, n, std::vector<Elem>(meet_.data().begin(), meet_.data().end()), "/\\");
  if (join_) {
    gens.emplace_back(2, n, std::vector<Elem>(join_->data().begin(), join_->data().end()), "\\/");
  }
  return gens;
}

}  // namespace latclone
