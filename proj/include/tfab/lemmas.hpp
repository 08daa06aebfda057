#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tfab/group_element.hpp"

namespace tfab {

enum class Lemma { m_props, phi_props, int_inclusion, l_purity, div_infinitude, purification_disjoint };

const char* lemma_name(Lemma l);
std::optional<Lemma> lemma_from_name(std::string_view name);

// Unset fields take per-lemma defaults (see check_lemma).
struct LemmaParams {
  std::optional<std::uint64_t> p;        // m-props: {2,3,5,7}; phi-props: {2,3,5}
  std::optional<std::uint64_t> kmax;     // m-props: 4; phi-props: 6
  std::optional<std::uint64_t> samples;  // phi-props: 20 lambdas per block; otherwise 100
  std::uint64_t seed = 1;
  std::uint64_t n = 3;                   // div-infinitude: witnesses required
  std::optional<GroupElement> element;   // div-infinitude: default is a seeded random element
};

struct LemmaReport {
  std::string lemma;
  bool pass = true;
  std::uint64_t checks = 0;
  nlohmann::json details = nlohmann::json::object();
  nlohmann::json counterexample = nullptr;  // first failure, when pass is false
};

LemmaReport check_lemma(Lemma which, const LemmaParams& params);

}  // namespace tfab
