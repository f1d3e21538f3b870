#include "adtchoice/universe.hpp"

#include <sstream>

#include "json.hpp"

namespace adtchoice {

Universe::Universe(std::vector<Element> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error("universe must not be empty");
  if (elements_.size() > 64) throw Error("universe is capped at 64 elements");
  for (std::uint32_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].id.empty()) throw Error("universe element with empty id");
    if (!index_.emplace(elements_[i].id, i).second)
      throw Error("duplicate universe id: " + elements_[i].id);
  }
}

Universe Universe::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("universe JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("elements") || !doc["elements"].is_array())
    throw ParseError("universe JSON: expected object with an \"elements\" array");
  std::vector<Element> elems;
  for (const auto& item : doc["elements"]) {
    Element e;
    if (!item.contains("id") || !item["id"].is_string())
      throw ParseError("universe JSON: element without string \"id\"");
    e.id = item["id"].get<std::string>();
    if (item.contains("attrs")) {
      for (auto it = item["attrs"].begin(); it != item["attrs"].end(); ++it) {
        if (it.value().is_boolean())
          e.attrs[it.key()] = it.value().get<bool>();
        else if (it.value().is_number())
          e.attrs[it.key()] = it.value().get<double>();
        else
          throw ParseError("universe JSON: attribute " + it.key() + " must be number or boolean");
      }
    }
    elems.push_back(std::move(e));
  }
  return Universe(std::move(elems));
}

AltId Universe::resolve(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error("unknown alternative: " + id);
  return AltId{it->second};
}

std::optional<AltId> Universe::try_resolve(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return AltId{it->second};
}

bool Universe::has_attr(const std::string& attr) const {
  for (const auto& e : elements_)
    if (!e.attrs.count(attr)) return false;
  return true;
}

double Universe::number(AltId x, const std::string& attr) const {
  const auto& attrs = elements_.at(x.index).attrs;
  auto it = attrs.find(attr);
  if (it == attrs.end())
    throw Error("missing attribute " + attr + " on " + elements_[x.index].id);
  if (std::holds_alternative<bool>(it->second)) return std::get<bool>(it->second) ? 1.0 : 0.0;
  return std::get<double>(it->second);
}

bool Universe::boolean(AltId x, const std::string& attr) const {
  const auto& attrs = elements_.at(x.index).attrs;
  auto it = attrs.find(attr);
  if (it == attrs.end())
    throw Error("missing attribute " + attr + " on " + elements_[x.index].id);
  if (std::holds_alternative<bool>(it->second)) return std::get<bool>(it->second);
  return std::get<double>(it->second) != 0.0;
}

std::string Universe::set_to_string(AltSet s) const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (AltId x : s.elements()) {
    if (!first) out << ',';
    out << name(x);
    first = false;
  }
  out << '}';
  return out.str();
}

AltSet Universe::parse_set(const std::string& csv) const {
  AltSet s;
  std::string cur;
  std::istringstream in(csv);
  while (std::getline(in, cur, ',')) {
    while (!cur.empty() && cur.front() == ' ') cur.erase(cur.begin());
    while (!cur.empty() && cur.back() == ' ') cur.pop_back();
    if (cur.empty()) continue;
    s.insert(resolve(cur));
  }
  if (s.empty()) throw Error("empty alternative set: \"" + csv + "\"");
  return s;
}

}  // namespace adtchoice
