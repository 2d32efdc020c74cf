#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pocketforge {

// The eleven casual creator design patterns.
enum class Pattern {
  instant_feedback,
  chorus_line,
  simulation_and_approximating_feedback,
  entertaining_evaluations,
  no_blank_canvas,
  limiting_actions,
  mutant_shopping,
  modifying_the_meaningful,
  saving_and_sharing,
  hosted_communities,
  modding_hacking_teaching,
};

inline constexpr std::size_t kPatternCount = 11;

struct PatternInfo {
  Pattern pattern;
  std::string_view id;
  std::string_view name;
};

inline constexpr std::array<PatternInfo, kPatternCount> kPatterns{{
    {Pattern::instant_feedback, "instant_feedback", "Instant feedback"},
    {Pattern::chorus_line, "chorus_line", "Chorus line"},
    {Pattern::simulation_and_approximating_feedback, "simulation_feedback",
     "Simulation and approximating feedback"},
    {Pattern::entertaining_evaluations, "entertaining_evaluations", "Entertaining evaluations"},
    {Pattern::no_blank_canvas, "no_blank_canvas", "No blank canvas"},
    {Pattern::limiting_actions, "limiting_actions", "Limiting actions to encourage exploration"},
    {Pattern::mutant_shopping, "mutant_shopping", "Mutant shopping"},
    {Pattern::modifying_the_meaningful, "modifying_the_meaningful", "Modifying the meaningful"},
    {Pattern::saving_and_sharing, "saving_and_sharing", "Saving and sharing"},
    {Pattern::hosted_communities, "hosted_communities", "Hosted communities"},
    {Pattern::modding_hacking_teaching, "modding_hacking_teaching", "Modding, hacking, teaching"},
}};

inline constexpr std::string_view pattern_id(Pattern p) {
  for (const auto& info : kPatterns) {
    if (info.pattern == p) return info.id;
  }
  return {};
}

struct ComponentInfo {
  std::string_view name;
  bool displays_state;
};

inline constexpr std::array<ComponentInfo, 7> kComponents{{
    {"Editing", true},
    {"Preview", true},
    {"Feedback", true},
    {"Random", false},
    {"Bookmark", true},
    {"Save", false},
    {"Share", false},
}};

/// One user-facing feature: the component that shows it, the pattern it
/// realizes, and the engine operations behind it.
struct Feature {
  std::string_view id;
  std::string_view component;
  Pattern pattern;
  std::string_view description;
  std::array<std::string_view, 3> operations;
};

inline constexpr std::array<Feature, 11> kFeatures{{
    {"editor_live_sync", "Editing", Pattern::instant_feedback,
     "every edit is committed and re-rendered in near real time",
     {"history.commit", "document.parse_html", ""}},
    {"single_page_project", "Editing", Pattern::limiting_actions,
     "a project is exactly one HTML page",
     {"document.validate_document", "", ""}},
    {"preview_live_render", "Preview", Pattern::instant_feedback,
     "the preview re-renders whatever the editor holds",
     {"document.parse_html", "document.serialize", ""}},
    {"feedback_live_size", "Feedback", Pattern::instant_feedback,
     "size feedback updates with every change, even mid-edit",
     {"feedback.measure_size", "", ""}},
    {"feedback_size_report", "Feedback", Pattern::simulation_and_approximating_feedback,
     "partial feedback: the byte size of the page",
     {"feedback.measure_size", "", ""}},
    {"feedback_homepage_comparison", "Feedback", Pattern::entertaining_evaluations,
     "playful size comparison with well-known homepages",
     {"feedback.compare", "feedback.render_feedback", ""}},
    {"generate_on_load", "Random", Pattern::no_blank_canvas,
     "a random page is generated on page load",
     {"tile_grammar.generate", "", ""}},
    {"random_button", "Random", Pattern::mutant_shopping,
     "the random button browses the possibility space",
     {"tile_grammar.generate", "history.commit", ""}},
    {"bookmark_button", "Bookmark", Pattern::mutant_shopping,
     "keep favourite artifacts for later",
     {"share.bookmark_add", "share.bookmark_list", ""}},
    {"save_button", "Save", Pattern::saving_and_sharing,
     "download the page as a standalone .html file",
     {"share.export_html", "", ""}},
    {"share_button", "Share", Pattern::saving_and_sharing,
     "serverless permalink in the URL fragment",
     {"share.encode_permalink", "share.decode_permalink", ""}},
}};

// Every operation a feature may cite.
inline constexpr std::array<std::string_view, 15> kEngineOperations{{
    "tile_grammar.generate", "document.parse_html", "document.serialize",
    "document.validate_document", "history.commit", "history.undo", "history.redo",
    "feedback.measure_size", "feedback.compare", "feedback.render_feedback",
    "share.export_html", "share.encode_permalink", "share.decode_permalink",
    "share.bookmark_add", "share.bookmark_list",
}};

struct AuditCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.passed; });
  }
};

inline std::set<Pattern> implemented_patterns() {
  std::set<Pattern> out;
  for (const auto& f : kFeatures) out.insert(f.pattern);
  return out;
}

inline std::size_t component_pattern_count(std::string_view component) {
  std::set<Pattern> out;
  for (const auto& f : kFeatures) {
    if (f.component == component) out.insert(f.pattern);
  }
  return out.size();
}

/// Checks the manifest against the expected pattern coverage: 7 of 11
/// patterns, the per-component counts, and 5 patterns realized by
/// components that display state.
inline AuditReport audit_patterns() {
  AuditReport report;
  auto check = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const auto implemented = implemented_patterns();
  check("implemented_patterns", implemented.size() == 7 && kPatterns.size() == 11,
        std::to_string(implemented.size()) + " of " + std::to_string(kPatterns.size()));

  const std::set<Pattern> expected_missing{Pattern::chorus_line, Pattern::modifying_the_meaningful,
                                           Pattern::hosted_communities,
                                           Pattern::modding_hacking_teaching};
  std::set<Pattern> missing;
  for (const auto& info : kPatterns) {
    if (!implemented.contains(info.pattern)) missing.insert(info.pattern);
  }
  std::string missing_ids;
  for (Pattern p : missing) missing_ids += (missing_ids.empty() ? "" : ",") + std::string(pattern_id(p));
  check("unimplemented_patterns", missing == expected_missing, missing_ids);

  constexpr std::array<std::pair<std::string_view, std::size_t>, 7> kExpected{{
      {"Editing", 2}, {"Preview", 1}, {"Feedback", 3}, {"Random", 2},
      {"Bookmark", 1}, {"Save", 1}, {"Share", 1},
  }};
  for (const auto& [component, want] : kExpected) {
    const std::size_t got = component_pattern_count(component);
    check("component_patterns." + std::string(component), got == want,
          std::to_string(got) + " (expected " + std::to_string(want) + ")");
  }

  std::set<Pattern> via_state;
  std::size_t state_mappings = 0;
  std::size_t all_mappings = 0;
  for (const auto& c : kComponents) {
    const std::size_t n = component_pattern_count(c.name);
    all_mappings += n;
    if (!c.displays_state) continue;
    state_mappings += n;
    for (const auto& f : kFeatures) {
      if (f.component == c.name) via_state.insert(f.pattern);
    }
  }
  check("patterns_via_state", via_state.size() == 5,
        std::to_string(via_state.size()) + " patterns realized by state-displaying components");
  check("state_components_majority", state_mappings * 2 > all_mappings,
        std::to_string(state_mappings) + " of " + std::to_string(all_mappings) +
            " component-pattern pairs");

  bool ops_known = true;
  std::string unknown;
  for (const auto& f : kFeatures) {
    for (auto op : f.operations) {
      if (op.empty()) continue;
      if (std::find(kEngineOperations.begin(), kEngineOperations.end(), op) ==
          kEngineOperations.end()) {
        ops_known = false;
        unknown += std::string(f.id) + ":" + std::string(op) + " ";
      }
    }
  }
  check("features_backed_by_engine", ops_known, ops_known ? "all operations exist" : unknown);
  return report;
}

/// Machine-readable manifest plus the audit outcome.
inline nlohmann::json pattern_manifest_json(const AuditReport& report) {
  nlohmann::json j;
  const auto implemented = implemented_patterns();
  for (const auto& info : kPatterns) {
    j["patterns"].push_back({{"id", info.id},
                             {"name", info.name},
                             {"implemented", implemented.contains(info.pattern)}});
  }
  for (const auto& c : kComponents) {
    nlohmann::json ids = nlohmann::json::array();
    std::set<Pattern> seen;
    for (const auto& f : kFeatures) {
      if (f.component == c.name && seen.insert(f.pattern).second) ids.push_back(pattern_id(f.pattern));
    }
    j["components"].push_back({{"name", c.name},
                               {"displays_state", c.displays_state},
                               {"pattern_count", ids.size()},
                               {"patterns", ids}});
  }
  for (const auto& f : kFeatures) {
    nlohmann::json ops = nlohmann::json::array();
    for (auto op : f.operations) {
      if (!op.empty()) ops.push_back(op);
    }
    j["features"].push_back({{"id", f.id},
                             {"component", f.component},
                             {"pattern", pattern_id(f.pattern)},
                             {"description", f.description},
                             {"operations", ops}});
  }
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j["implemented_count"] = implemented.size();
  j["pattern_count"] = kPatterns.size();
  j["passed"] = report.passed();
  return j;
}

}  // namespace pocketforge
