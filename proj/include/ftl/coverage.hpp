#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace ftl {

// Decoder branches, counted so tests can insist every case of the analysis is exercised.
enum class Branch : int {
  ss2_s1_reject,
  ss2_off_path,
  ss2_down_alpha_outside,
  ss2_down_alpha_bit,
  ss2_down_beta_between,
  ss2_down_disconnected,
  ss2_up_bit,
  ss2_up_a_above,
  ss2_up_a_equal,
  ss2_up_q_outside,
  ss2_up_b_between,
  ss2_up_b_equal,
  ss2_up_c_between,
  ss2_up_disconnected,
  ss2_side_light,
  ss2_side_g_null,
  ss2_side_g_equal,
  ss2_side_down_prime,
  ss2_side_g_bit,
  ss2_side_up_prime,
  ss2_ind_ell_outside,
  ss2_ind_ell_bit,
  ss2_ind_hy_outside,
  ss2_ind_hy_bit,
  ss2_ind_hx_outside,
  ss2_ind_hx_bit,
  ss2_ind_d_in_b,
  ss2_ind_disconnected,
  c1_violated,
  c2_both_connected,
  c2_split,
  ind_c3_violated,
  p_case1,
  p_case2_direct,
  p_case2_rerun_bit,
  p_case2_rerun_connected,
  dep_light_ancestor,
  dep_c4_inside,
  dep_c4_cid,
  dep_analog,
  ah_case1,
  ah_case2,
  ah_case3_parent,
  ah_case3_cid_equal,
  ah_claim38_disconnected,
  count_
};

inline constexpr std::array<std::string_view, static_cast<int>(Branch::count_)> kBranchNames = {
    "ss2.s1_reject",        "ss2.off_path",           "ss2.down.alpha_outside", "ss2.down.alpha_bit",
    "ss2.down.beta_between", "ss2.down.disconnected", "ss2.up.bit",             "ss2.up.a_above",
    "ss2.up.a_equal",       "ss2.up.q_outside",       "ss2.up.b_between",       "ss2.up.b_equal",
    "ss2.up.c_between",     "ss2.up.disconnected",    "ss2.side.light",         "ss2.side.g_null",
    "ss2.side.g_equal",     "ss2.side.down_prime",    "ss2.side.g_bit",         "ss2.side.up_prime",
    "ss2.ind.ell_outside",  "ss2.ind.ell_bit",        "ss2.ind.hy_outside",     "ss2.ind.hy_bit",
    "ss2.ind.hx_outside",   "ss2.ind.hx_bit",         "ss2.ind.d_in_b",         "ss2.ind.disconnected",
    "c1.violated",          "c2.both_connected",      "c2.split",               "ind.c3_violated",
    "p.case1",              "p.case2_direct",         "p.case2_rerun_bit",      "p.case2_rerun_connected",
    "dep.light_ancestor",   "dep.c4_inside",          "dep.c4_cid",             "dep.analog",
    "ah.case1",             "ah.case2",               "ah.case3_parent",        "ah.case3_cid_equal",
    "ah.claim38_disconnected"};

struct Coverage {
  std::array<std::uint64_t, static_cast<int>(Branch::count_)> hits{};
  void hit(Branch b) { ++hits[static_cast<int>(b)]; }
  std::uint64_t operator[](Branch b) const { return hits[static_cast<int>(b)]; }
  void merge(const Coverage& o) {
    for (std::size_t i = 0; i < hits.size(); ++i) hits[i] += o.hits[i];
  }
};

inline void mark(Coverage* c, Branch b) {
  if (c) c->hit(b);
}

}  // namespace ftl
