#include "ftl/label_io.hpp"

namespace ftl {

void put_eid(BitWriter& w, const ExtendedId& e) {
  w.put_vertex(e.id);
  w.put_vertex(e.anc.tin);
  w.put_vertex(e.anc.tout);
  w.put_opt_vertex(e.heavy);
  if (e.heavy) {
    w.put_vertex(e.heavy_anc.tin);
    w.put_vertex(e.heavy_anc.tout);
  }
  w.put_vertex(e.nl);
  w.put_vertex(e.path);
}

ExtendedId get_eid(BitReader& r) {
  ExtendedId e;
  e.id = r.get_vertex();
  e.anc.tin = r.get_vertex();
  e.anc.tout = r.get_vertex();
  e.heavy = r.get_opt_vertex();
  if (e.heavy) {
    e.heavy_anc.tin = r.get_vertex();
    e.heavy_anc.tout = r.get_vertex();
  }
  e.nl = r.get_vertex();
  e.path = r.get_vertex();
  return e;
}

void put_opt_eid(BitWriter& w, const std::optional<ExtendedId>& e) {
  w.put_bit(e.has_value());
  if (e) put_eid(w, *e);
}

std::optional<ExtendedId> get_opt_eid(BitReader& r) {
  if (!r.get_bit()) return std::nullopt;
  return get_eid(r);
}

}  // namespace ftl
