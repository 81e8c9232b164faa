// Copyright 2026 The itt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "json_codec.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <utility>

#include "itt/io.h"

namespace itt::codec {
namespace {

constexpr int kFormatVersion = 1;
constexpr std::string_view kProblemFormat = "itt-problem";
constexpr std::string_view kScheduleFormat = "itt-schedule";

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw FormatError((path.empty() ? std::string("/") : path) + ": " + what);
}

// Strict object reader: every key must be consumed before Done().
class Fields {
 public:
  Fields(const Json& json, std::string path)
      : json_(json), path_(std::move(path)) {
    if (!json_.is_object()) Fail(path_, "expected an object");
  }

  std::string Path(std::string_view key) const {
    return path_ + "/" + std::string(key);
  }

  const Json* Find(std::string_view key) {
    auto it = json_.find(std::string(key));
    if (it == json_.end()) return nullptr;
    used_.insert(std::string(key));
    return &*it;
  }

  const Json& Get(std::string_view key) {
    const Json* j = Find(key);
    if (!j) Fail(path_, "missing field '" + std::string(key) + "'");
    return *j;
  }

  long long Int(std::string_view key) { return AsInt(Get(key), Path(key)); }
  long long Int(std::string_view key, long long fallback) {
    const Json* j = Find(key);
    return j ? AsInt(*j, Path(key)) : fallback;
  }
  double Num(std::string_view key) { return AsNum(Get(key), Path(key)); }
  double Num(std::string_view key, double fallback) {
    const Json* j = Find(key);
    return j ? AsNum(*j, Path(key)) : fallback;
  }
  std::string Str(std::string_view key) { return AsStr(Get(key), Path(key)); }
  std::string Str(std::string_view key, const std::string& fallback) {
    const Json* j = Find(key);
    return j ? AsStr(*j, Path(key)) : fallback;
  }
  bool Bool(std::string_view key, bool fallback) {
    const Json* j = Find(key);
    if (!j) return fallback;
    if (!j->is_boolean()) Fail(Path(key), "expected a boolean");
    return j->get<bool>();
  }

  void Done() const {
    for (auto it = json_.begin(); it != json_.end(); ++it) {
      if (!used_.contains(it.key())) Fail(Path(it.key()), "unknown field");
    }
  }

  static long long AsInt(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) Fail(path, "expected an integer");
    return j.get<long long>();
  }
  static int AsInt32(const Json& j, const std::string& path) {
    const long long v = AsInt(j, path);
    if (v < std::numeric_limits<int>::min() ||
        v > std::numeric_limits<int>::max()) {
      Fail(path, "integer out of range");
    }
    return static_cast<int>(v);
  }
  static double AsNum(const Json& j, const std::string& path) {
    if (!j.is_number()) Fail(path, "expected a number");
    return j.get<double>();
  }
  static std::string AsStr(const Json& j, const std::string& path) {
    if (!j.is_string()) Fail(path, "expected a string");
    return j.get<std::string>();
  }
  static const Json& AsArray(const Json& j, const std::string& path) {
    if (!j.is_array()) Fail(path, "expected an array");
    return j;
  }

 private:
  const Json& json_;
  std::string path_;
  std::set<std::string> used_;
};

int ToInt(long long v, const std::string& path) {
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    Fail(path, "integer out of range");
  }
  return static_cast<int>(v);
}

char MarkChar(SlotMark m) {
  switch (m) {
    case SlotMark::kNeutral:
      return '.';
    case SlotMark::kSoft:
      return 's';
    case SlotMark::kHard:
      return 'x';
  }
  return '?';
}

std::string EncodeMarks(const TimePreference& marks, int total) {
  if (marks.empty()) return std::string(total, '.');
  std::string out;
  out.reserve(marks.size());
  for (SlotMark m : marks) out.push_back(MarkChar(m));
  return out;
}

TimePreference DecodeMarks(const std::string& text, const std::string& path) {
  TimePreference marks;
  marks.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '.':
        marks.push_back(SlotMark::kNeutral);
        break;
      case 's':
        marks.push_back(SlotMark::kSoft);
        break;
      case 'x':
        marks.push_back(SlotMark::kHard);
        break;
      default:
        Fail(path, "invalid mark character '" + std::string(1, text[i]) +
                       "' at offset " + std::to_string(i));
    }
  }
  return marks;
}

std::optional<SlotMark> ParseMarkName(std::string_view s) {
  if (s == "neutral") return SlotMark::kNeutral;
  if (s == "soft") return SlotMark::kSoft;
  if (s == "hard") return SlotMark::kHard;
  return std::nullopt;
}

std::vector<std::string> StringList(const Json& j, const std::string& path) {
  Fields::AsArray(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(Fields::AsStr(j[i], path + "/" + std::to_string(i)));
  }
  return out;
}

void CheckHeader(Fields& f, std::string_view format) {
  const std::string got = f.Str("format");
  if (got != format) {
    Fail(f.Path("format"), "expected '" + std::string(format) + "', got '" +
                               got + "'");
  }
  if (f.Int("version") != kFormatVersion) {
    Fail(f.Path("version"), "unsupported version");
  }
}

Json EncodeActivity(const Activity& act, int total) {
  Json groups = Json::array();
  for (const ResourceGroup& g : act.groups) {
    groups.push_back({{"mode", std::string(ToString(g.mode))},
                      {"members", g.members}});
  }
  Json prefs = Json::array();
  for (const LocationPreference& p : act.location_prefs) {
    prefs.push_back(
        {{"start", p.start}, {"selection", p.selection}, {"penalty", p.penalty}});
  }
  return {{"id", act.id},
          {"name", act.name},
          {"duration", act.duration},
          {"marks", EncodeMarks(act.marks, total)},
          {"groups", std::move(groups)},
          {"location_prefs", std::move(prefs)}};
}

Activity DecodeActivity(const Json& j, const std::string& path) {
  Fields f(j, path);
  Activity act;
  act.id = f.Str("id");
  act.name = f.Str("name", "");
  act.duration = ToInt(f.Int("duration"), f.Path("duration"));
  if (const Json* m = f.Find("marks")) {
    act.marks = DecodeMarks(Fields::AsStr(*m, f.Path("marks")), f.Path("marks"));
  }
  const Json& groups = Fields::AsArray(f.Get("groups"), f.Path("groups"));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::string gp = f.Path("groups") + "/" + std::to_string(g);
    Fields gf(groups[g], gp);
    ResourceGroup group;
    const std::string mode = gf.Str("mode");
    auto parsed = ParseGroupMode(mode);
    if (!parsed) Fail(gf.Path("mode"), "unknown group mode '" + mode + "'");
    group.mode = *parsed;
    group.members = StringList(gf.Get("members"), gf.Path("members"));
    gf.Done();
    act.groups.push_back(std::move(group));
  }
  if (const Json* prefs = f.Find("location_prefs")) {
    Fields::AsArray(*prefs, f.Path("location_prefs"));
    for (std::size_t i = 0; i < prefs->size(); ++i) {
      const std::string pp = f.Path("location_prefs") + "/" + std::to_string(i);
      Fields pf((*prefs)[i], pp);
      LocationPreference pref;
      pref.start = ToInt(pf.Int("start"), pf.Path("start"));
      if (const Json* sel = pf.Find("selection")) {
        pref.selection = StringList(*sel, pf.Path("selection"));
      }
      pref.penalty = pf.Num("penalty");
      pf.Done();
      act.location_prefs.push_back(std::move(pref));
    }
  }
  f.Done();
  return act;
}

Dependency DecodeDependencyFields(Fields& f, std::string_view kind_key) {
  Dependency dep;
  const std::string kind = f.Str(kind_key);
  auto parsed = ParseDependencyKind(kind);
  if (!parsed) Fail(f.Path(kind_key), "unknown dependency kind '" + kind + "'");
  dep.kind = *parsed;
  dep.first = f.Str("first");
  dep.second = f.Str("second");
  return dep;
}

Json EncodeStats(const LocationStats& s) {
  return {{"n_conflicts", s.n_conflicts},
          {"n_repeat_evict", s.n_repeat_evict},
          {"n_conflict_no_resched", s.n_conflict_no_resched},
          {"n_soft", s.n_soft},
          {"dist_prev", s.dist_prev},
          {"user_pref", s.user_pref}};
}

std::vector<std::string> Ids(const Problem& problem,
                             const std::vector<ActivityIndex>& activities) {
  std::vector<std::string> out;
  for (ActivityIndex a : activities) out.push_back(problem.activity(a).id);
  return out;
}

StrategySpec ParseStrategySpec(const std::string& text,
                               const std::string& path) {
  StrategySpec spec;
  if (text == "random") {
    spec.strategy = ActivityStrategy::kRandom;
  } else if (text == "full" || text == "full-scan") {
    spec.strategy = ActivityStrategy::kFullScan;
    spec.sample_probability = 1.0;
  } else if (text == "sampled") {
    spec.strategy = ActivityStrategy::kSampled;
  } else if (text.starts_with("sampled(") && text.ends_with(")")) {
    spec.strategy = ActivityStrategy::kSampled;
    const std::string inner = text.substr(8, text.size() - 9);
    char* end = nullptr;
    spec.sample_probability = std::strtod(inner.c_str(), &end);
    if (inner.empty() || end != inner.c_str() + inner.size()) {
      Fail(path, "bad sample probability in '" + text + "'");
    }
  } else {
    Fail(path, "unknown strategy '" + text + "'");
  }
  return spec;
}

}  // namespace

Json Parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& err) {
    // Locate the byte offset as line:column.
    std::size_t line = 1, col = 1;
    const std::size_t limit = std::min<std::size_t>(err.byte, text.size());
    for (std::size_t i = 0; i + 1 < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw FormatError("syntax error at line " + std::to_string(line) +
                      ", column " + std::to_string(col) + ": " + err.what());
  }
}

Json EncodeProblem(const ProblemDesc& desc) {
  const int total = desc.grid.total_slots();
  Json resources = Json::array();
  for (const Resource& r : desc.resources) {
    resources.push_back({{"id", r.id},
                         {"name", r.name},
                         {"kind", r.kind},
                         {"marks", EncodeMarks(r.marks, total)}});
  }
  Json activities = Json::array();
  for (const Activity& a : desc.activities) {
    activities.push_back(EncodeActivity(a, total));
  }
  Json deps = Json::array();
  for (const Dependency& d : desc.dependencies) {
    deps.push_back({{"kind", std::string(ToString(d.kind))},
                    {"first", d.first},
                    {"second", d.second}});
  }
  return {{"format", kProblemFormat},
          {"version", kFormatVersion},
          {"grid",
           {{"days", desc.grid.days}, {"slots_per_day", desc.grid.slots_per_day}}},
          {"resources", std::move(resources)},
          {"activities", std::move(activities)},
          {"dependencies", std::move(deps)}};
}

ProblemDesc DecodeProblem(const Json& doc) {
  Fields f(doc, "");
  CheckHeader(f, kProblemFormat);
  ProblemDesc desc;
  {
    Fields g(f.Get("grid"), "/grid");
    desc.grid.days = ToInt(g.Int("days"), "/grid/days");
    desc.grid.slots_per_day = ToInt(g.Int("slots_per_day"), "/grid/slots_per_day");
    g.Done();
  }
  const Json& resources = Fields::AsArray(f.Get("resources"), "/resources");
  for (std::size_t i = 0; i < resources.size(); ++i) {
    const std::string path = "/resources/" + std::to_string(i);
    Fields rf(resources[i], path);
    Resource r;
    r.id = rf.Str("id");
    r.name = rf.Str("name", "");
    r.kind = rf.Str("kind", "");
    if (const Json* m = rf.Find("marks")) {
      r.marks = DecodeMarks(Fields::AsStr(*m, rf.Path("marks")), rf.Path("marks"));
    }
    rf.Done();
    desc.resources.push_back(std::move(r));
  }
  const Json& activities = Fields::AsArray(f.Get("activities"), "/activities");
  for (std::size_t i = 0; i < activities.size(); ++i) {
    desc.activities.push_back(
        DecodeActivity(activities[i], "/activities/" + std::to_string(i)));
  }
  if (const Json* deps = f.Find("dependencies")) {
    Fields::AsArray(*deps, "/dependencies");
    for (std::size_t i = 0; i < deps->size(); ++i) {
      Fields df((*deps)[i], "/dependencies/" + std::to_string(i));
      desc.dependencies.push_back(DecodeDependencyFields(df, "kind"));
      df.Done();
    }
  }
  f.Done();
  return desc;
}

Json EncodeLocation(const Problem& problem, ActivityIndex a,
                    const Location& loc) {
  std::vector<std::string> resources;
  if (problem.ValidLocation(a, loc) ||
      (loc.selection >= 0 && loc.selection < problem.num_selections(a))) {
    for (ResourceIndex r : problem.selection(a, loc.selection)) {
      resources.push_back(problem.resource(r).id);
    }
  }
  return {{"start", loc.start}, {"resources", std::move(resources)}};
}

Json EncodeSchedule(const Problem& problem, const Schedule& schedule) {
  Json assignments = Json::array();
  for (ActivityIndex a = 0; a < schedule.size(); ++a) {
    const auto& loc = schedule.location(a);
    if (!loc) continue;
    Json entry = {{"activity", problem.activity(a).id}};
    Json l = EncodeLocation(problem, a, *loc);
    entry["start"] = l["start"];
    entry["resources"] = l["resources"];
    entry["fixed"] = schedule.fixed(a);
    assignments.push_back(std::move(entry));
  }
  return {{"format", kScheduleFormat},
          {"version", kFormatVersion},
          {"problem_hash", Hash(EncodeProblem(problem.desc()).dump(2) + "\n")},
          {"assignments", std::move(assignments)}};
}

Schedule DecodeSchedule(const Json& doc, const Problem& problem,
                        bool check_hash) {
  Fields f(doc, "");
  CheckHeader(f, kScheduleFormat);
  const std::string hash = f.Str("problem_hash");
  if (check_hash &&
      hash != Hash(EncodeProblem(problem.desc()).dump(2) + "\n")) {
    Fail("/problem_hash", "schedule was produced for a different problem");
  }
  Schedule schedule(problem.num_activities());
  const Json& list = Fields::AsArray(f.Get("assignments"), "/assignments");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "/assignments/" + std::to_string(i);
    Fields af(list[i], path);
    const std::string id = af.Str("activity");
    auto a = problem.FindActivity(id);
    if (!a) Fail(af.Path("activity"), "unknown activity '" + id + "'");
    if (schedule.assigned(*a)) Fail(path, "activity '" + id + "' assigned twice");
    const int start = ToInt(af.Int("start"), af.Path("start"));
    std::vector<ResourceIndex> resources;
    for (const std::string& rid :
         StringList(af.Get("resources"), af.Path("resources"))) {
      auto r = problem.FindResource(rid);
      if (!r) Fail(af.Path("resources"), "unknown resource '" + rid + "'");
      resources.push_back(*r);
    }
    auto sel = problem.FindSelection(*a, resources);
    if (!sel) {
      Fail(af.Path("resources"),
           "not a valid resource selection for '" + id + "'");
    }
    const bool fixed = af.Bool("fixed", false);
    af.Done();
    schedule.Assign(*a, {start, *sel});
    if (fixed) schedule.SetFixed(*a, true);
  }
  f.Done();
  return schedule;
}

Json EncodeWeights(const HeuristicWeights& w) {
  return {{"activity", w.activity},
          {"location", w.location},
          {"sample_probability", w.sample_probability},
          {"location_group_factor", w.location_group_factor},
          {"tabu_length", w.tabu_length},
          {"max_iterations", w.max_iterations},
          {"prefilter_threshold", w.prefilter_threshold},
          {"activity_strategy", std::string(ToString(w.activity_strategy))},
          {"location_rule", std::string(ToString(w.location_rule))}};
}

HeuristicWeights DecodeWeights(const Json& doc, const std::string& path) {
  Fields f(doc, path);
  HeuristicWeights w;
  auto fixed_array = [&](std::string_view key, auto& out) {
    const Json* j = f.Find(key);
    if (!j) return;
    Fields::AsArray(*j, f.Path(key));
    if (j->size() != out.size()) {
      Fail(f.Path(key), "expected " + std::to_string(out.size()) + " numbers");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = Fields::AsNum((*j)[i], f.Path(key) + "/" + std::to_string(i));
    }
  };
  fixed_array("activity", w.activity);
  fixed_array("location", w.location);
  w.sample_probability = f.Num("sample_probability", w.sample_probability);
  w.location_group_factor =
      f.Num("location_group_factor", w.location_group_factor);
  w.tabu_length = ToInt(f.Int("tabu_length", w.tabu_length), f.Path("tabu_length"));
  w.max_iterations =
      ToInt(f.Int("max_iterations", w.max_iterations), f.Path("max_iterations"));
  w.prefilter_threshold = ToInt(
      f.Int("prefilter_threshold", w.prefilter_threshold),
      f.Path("prefilter_threshold"));
  if (const Json* s = f.Find("activity_strategy")) {
    const std::string text = Fields::AsStr(*s, f.Path("activity_strategy"));
    auto parsed = ParseActivityStrategy(text);
    if (!parsed) Fail(f.Path("activity_strategy"), "unknown strategy '" + text + "'");
    w.activity_strategy = *parsed;
  }
  if (const Json* s = f.Find("location_rule")) {
    const std::string text = Fields::AsStr(*s, f.Path("location_rule"));
    auto parsed = ParseLocationRule(text);
    if (!parsed) Fail(f.Path("location_rule"), "unknown rule '" + text + "'");
    w.location_rule = *parsed;
  }
  f.Done();
  try {
    w.Validate();
  } catch (const std::invalid_argument& err) {
    Fail(path, err.what());
  }
  return w;
}

Json EncodeGenParams(const GenParams& p) {
  return {{"n_teachers", p.n_teachers},
          {"n_classes", p.n_classes},
          {"n_rooms", p.n_rooms},
          {"days", p.days},
          {"slots_per_day", p.slots_per_day},
          {"fill_percent", p.fill_percent},
          {"min_duration", p.min_duration},
          {"max_duration", p.max_duration},
          {"dependency_density", p.dependency_density},
          {"soft_density", p.soft_density},
          {"max_room_alternatives", p.max_room_alternatives},
          {"max_attempts", p.max_attempts},
          {"seed", p.seed}};
}

namespace {

// The parser stores every non-negative integer as unsigned.
std::uint64_t Seed(Fields& f, std::string_view key, std::uint64_t fallback) {
  const Json* j = f.Find(key);
  if (!j) return fallback;
  if (!j->is_number_unsigned()) {
    Fail(f.Path(key), "expected a non-negative integer");
  }
  return j->get<std::uint64_t>();
}

}  // namespace

GenParams DecodeGenParams(const Json& doc, const std::string& path) {
  Fields f(doc, path);
  GenParams p;
  auto i32 = [&](std::string_view key, int fallback) {
    return ToInt(f.Int(key, fallback), f.Path(key));
  };
  p.n_teachers = i32("n_teachers", p.n_teachers);
  p.n_classes = i32("n_classes", p.n_classes);
  p.n_rooms = i32("n_rooms", p.n_rooms);
  p.days = i32("days", p.days);
  p.slots_per_day = i32("slots_per_day", p.slots_per_day);
  p.fill_percent = f.Num("fill_percent", p.fill_percent);
  p.min_duration = i32("min_duration", p.min_duration);
  p.max_duration = i32("max_duration", p.max_duration);
  p.dependency_density = f.Num("dependency_density", p.dependency_density);
  p.soft_density = f.Num("soft_density", p.soft_density);
  p.max_room_alternatives = i32("max_room_alternatives", p.max_room_alternatives);
  p.max_attempts = i32("max_attempts", p.max_attempts);
  p.seed = Seed(f, "seed", p.seed);
  f.Done();
  try {
    p.Validate();
  } catch (const std::invalid_argument& err) {
    Fail(path, err.what());
  }
  return p;
}

BenchConfig DecodeBenchConfig(const Json& doc) {
  Fields f(doc, "");
  BenchConfig config;
  const Json& strategies = Fields::AsArray(f.Get("strategies"), "/strategies");
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const std::string path = "/strategies/" + std::to_string(i);
    config.strategies.push_back(
        ParseStrategySpec(Fields::AsStr(strategies[i], path), path));
  }
  const Json& fills = Fields::AsArray(f.Get("fills"), "/fills");
  for (std::size_t i = 0; i < fills.size(); ++i) {
    config.fills.push_back(Fields::AsNum(fills[i], "/fills/" + std::to_string(i)));
  }
  config.seeds = ToInt(f.Int("seeds", config.seeds), "/seeds");
  config.base_seed = Seed(f, "base_seed", config.base_seed);
  config.iteration_cap =
      ToInt(f.Int("iteration_cap", config.iteration_cap), "/iteration_cap");
  config.workers = ToInt(f.Int("workers", config.workers), "/workers");
  if (const Json* w = f.Find("weights")) config.weights = DecodeWeights(*w, "/weights");
  if (const Json* g = f.Find("generator")) {
    config.generator = DecodeGenParams(*g, "/generator");
  }
  f.Done();
  try {
    config.Validate();
  } catch (const std::invalid_argument& err) {
    Fail("", err.what());
  }
  return config;
}

Json EncodeReport(const Problem& problem, const IterationReport& report) {
  Json j = {{"iteration", report.iteration},
            {"activity", report.activity == kNoActivity
                             ? std::string()
                             : problem.activity(report.activity).id},
            {"candidates", report.candidates}};
  if (report.chosen) {
    j["skipped"] = false;
    j["location"] = EncodeLocation(problem, report.activity,
                                   report.chosen->location);
    j["score"] = report.chosen->score;
    j["stats"] = EncodeStats(report.chosen->stats);
  } else {
    j["skipped"] = true;
  }
  j["evicted"] = Ids(problem, report.evicted);
  j["unscheduled"] = report.unscheduled;
  return j;
}

Json EncodeRepairReport(const RepairReport& r) {
  return {{"edit", r.edit},
          {"accepted", r.accepted},
          {"rolled_back", r.rolled_back},
          {"reason", r.reason},
          {"evicted", r.evicted},
          {"detached", r.detached},
          {"scheduled", r.scheduled}};
}

Json EncodeSnapshot(const Snapshot& s) {
  const Problem& problem = *s.problem;
  Json schedule = EncodeSchedule(problem, s.schedule);
  Json removed = Json::object();
  for (ActivityIndex a = 0; a < static_cast<int>(s.n_removed.size()); ++a) {
    if (s.n_removed[a] > 0) removed[problem.activity(a).id] = s.n_removed[a];
  }
  return {{"version", s.version},
          {"iteration", s.iteration},
          {"edits_applied", s.edits_applied},
          {"activities", problem.num_activities()},
          {"scheduled", s.schedule.num_assigned()},
          {"unscheduled", Ids(problem, s.unscheduled)},
          {"soft_total", s.soft_total},
          {"best", {{"scheduled", s.best_scheduled},
                    {"soft_total", s.best_soft_total}}},
          {"problem_hash", schedule["problem_hash"]},
          {"assignments", schedule["assignments"]},
          {"n_removed", std::move(removed)}};
}

Edit DecodeEdit(const Json& doc, const std::string& path) {
  Fields f(doc, path);
  const std::string kind = f.Str("kind");
  auto done = [&](Edit e) {
    f.Done();
    return e;
  };
  if (kind == "place_and_fix") {
    edit::PlaceAndFix e;
    e.activity = f.Str("activity");
    e.start = ToInt(f.Int("start"), f.Path("start"));
    e.resources = StringList(f.Get("resources"), f.Path("resources"));
    return done(e);
  }
  if (kind == "unfix") return done(edit::Unfix{f.Str("activity")});
  if (kind == "detach") return done(edit::Detach{f.Str("activity")});
  if (kind == "remove_activity") {
    return done(edit::RemoveActivity{f.Str("activity")});
  }
  if (kind == "set_duration") {
    edit::SetDuration e;
    e.activity = f.Str("activity");
    e.duration = ToInt(f.Int("duration"), f.Path("duration"));
    return done(e);
  }
  if (kind == "add_dependency") {
    return done(edit::AddDependency{DecodeDependencyFields(f, "relation")});
  }
  if (kind == "remove_dependency") {
    return done(edit::RemoveDependency{DecodeDependencyFields(f, "relation")});
  }
  if (kind == "set_slot_mark") {
    edit::SetSlotMark e;
    e.entity = f.Str("entity");
    e.slot = ToInt(f.Int("slot"), f.Path("slot"));
    const std::string mark = f.Str("mark");
    auto parsed = ParseMarkName(mark);
    if (!parsed) Fail(f.Path("mark"), "unknown mark '" + mark + "'");
    e.mark = *parsed;
    return done(e);
  }
  if (kind == "add_activity") {
    return done(
        edit::AddActivity{DecodeActivity(f.Get("activity"), f.Path("activity"))});
  }
  if (kind == "set_weights") {
    return done(
        edit::SetWeights{DecodeWeights(f.Get("weights"), f.Path("weights"))});
  }
  Fail(f.Path("kind"), "unknown edit kind '" + kind + "'");
}

std::string Hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace itt::codec
