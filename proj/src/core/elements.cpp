#include "kubeharden/core/elements.hpp"
#include "kubeharden/core/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kubeharden {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string selector_text(const NestedRecord& selector) {
    // {} selects everything in scope.
    if (!selector.is_object() || selector.empty()) return "*";
    std::vector<std::string> parts;
    if (selector.contains("matchLabels") && selector["matchLabels"].is_object()) {
        for (auto it = selector["matchLabels"].begin(); it != selector["matchLabels"].end(); ++it)
            parts.push_back(it.key() + "=" + canonical_scalar(it.value()));
    }
    if (selector.contains("matchExpressions") && selector["matchExpressions"].is_array()) {
        for (const auto& expr : selector["matchExpressions"]) {
            std::string key = expr.value("key", std::string{});
            std::string op = expr.value("operator", std::string{});
            std::vector<std::string> values;
            if (expr.contains("values") && expr["values"].is_array())
                for (const auto& v : expr["values"]) values.push_back(canonical_scalar(v));
            std::sort(values.begin(), values.end());
            std::string joined;
            for (const auto& v : values) joined += (joined.empty() ? "" : ",") + v;
            parts.push_back(key + "~" + lowercase(op) + "~(" + joined + ")");
        }
    }
    if (parts.empty()) return "*";
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
    return out;
}

std::string canonical_peer(const NestedRecord& peer) {
    std::vector<std::string> parts;
    if (peer.contains("ipBlock") && peer["ipBlock"].is_object()) {
        const auto& block = peer["ipBlock"];
        std::string text = "cidr:" + block.value("cidr", std::string{});
        std::vector<std::string> excepts;
        if (block.contains("except") && block["except"].is_array())
            for (const auto& e : block["except"]) excepts.push_back(canonical_scalar(e));
        std::sort(excepts.begin(), excepts.end());
        for (const auto& e : excepts) text += "!" + e;
        parts.push_back(text);
    }
    if (peer.contains("namespaceSelector"))
        parts.push_back("ns:" + selector_text(peer["namespaceSelector"]));
    if (peer.contains("podSelector"))
        parts.push_back("pod:" + selector_text(peer["podSelector"]));
    if (parts.empty()) return "ALL";
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "&") + p;
    return out;
}

std::string canonical_port(const NestedRecord& entry) {
    if (!entry.contains("port")) return "ANY";
    const auto& port = entry["port"];
    if (port.is_number_integer()) {
        long long value = port.get<long long>();
        if (value < 1 || value > 65535)
            throw MalformedRuleError("port out of range: " + std::to_string(value));
        std::string text = std::to_string(value);
        if (entry.contains("endPort") && entry["endPort"].is_number_integer()) {
            long long end = entry["endPort"].get<long long>();
            if (end < value || end > 65535)
                throw MalformedRuleError("endPort out of range: " + std::to_string(end));
            text += "-" + std::to_string(end);
        }
        return text;
    }
    if (port.is_string()) return port.get<std::string>(); // named port
    throw MalformedRuleError("unsupported port value: " + port.dump());
}

void expand_netpol_rules(const NestedRecord& rules, Direction direction,
                         const char* peer_field, std::set<NetPolElement>& out) {
    for (const auto& rule : rules) {
        std::vector<std::pair<std::string, Protocol>> ports;
        if (rule.contains("ports") && rule["ports"].is_array() && !rule["ports"].empty()) {
            for (const auto& entry : rule["ports"]) {
                Protocol proto = Protocol::TCP;
                if (entry.contains("protocol"))
                    proto = protocol_from_string(canonical_scalar(entry["protocol"]));
                ports.emplace_back(canonical_port(entry), proto);
            }
        } else {
            ports.emplace_back("ANY", Protocol::Any);
        }

        std::vector<std::string> peers;
        if (rule.contains(peer_field) && rule[peer_field].is_array() &&
            !rule[peer_field].empty()) {
            for (const auto& peer : rule[peer_field]) peers.push_back(canonical_peer(peer));
        } else {
            peers.emplace_back("ALL");
        }

        for (const auto& peer : peers)
            for (const auto& [port, proto] : ports)
                out.insert(NetPolElement{direction, peer, port, proto});
    }
}

const NestedRecord* find_pod_spec(const ManifestDoc& doc) {
    if (!doc.body.is_object() || !doc.body.contains("spec")) return nullptr;
    const auto& spec = doc.body["spec"];
    if (!spec.is_object() || !spec.contains("template")) return nullptr;
    const auto& tmpl = spec["template"];
    if (!tmpl.is_object() || !tmpl.contains("spec") || !tmpl["spec"].is_object())
        return nullptr;
    return &tmpl["spec"];
}

void emit_security_context(const NestedRecord& ctx, const std::string& prefix,
                           std::set<DeploymentElement>& out) {
    if (!ctx.is_object()) return;
    for (auto it = ctx.begin(); it != ctx.end(); ++it) {
        const std::string path = prefix + "." + it.key();
        if (it.key() == "capabilities" && it.value().is_object()) {
            for (const char* list : {"add", "drop"}) {
                if (it.value().contains(list) && it.value()[list].is_array())
                    for (const auto& cap : it.value()[list])
                        out.insert({path + "." + list, canonical_scalar(cap)});
            }
        } else if (it.value().is_object()) {
            for (auto sub = it.value().begin(); sub != it.value().end(); ++sub)
                if (!sub.value().is_structured())
                    out.insert({path + "." + sub.key(), canonical_scalar(sub.value())});
        } else if (it.value().is_array()) {
            for (const auto& item : it.value())
                if (!item.is_structured()) out.insert({path, canonical_scalar(item)});
        } else {
            out.insert({path, canonical_scalar(it.value())});
        }
    }
}

std::string volume_descriptor(const NestedRecord& volume) {
    if (volume.contains("hostPath") && volume["hostPath"].is_object())
        return "hostPath:" + volume["hostPath"].value("path", std::string{});
    if (volume.contains("emptyDir")) return "emptyDir";
    if (volume.contains("configMap") && volume["configMap"].is_object())
        return "configMap:" + volume["configMap"].value("name", std::string{});
    if (volume.contains("secret") && volume["secret"].is_object())
        return "secret:" + volume["secret"].value("secretName", std::string{});
    if (volume.contains("persistentVolumeClaim") && volume["persistentVolumeClaim"].is_object())
        return "pvc:" + volume["persistentVolumeClaim"].value("claimName", std::string{});
    // Unusual volume types: fingerprint the source so equal docs stay equal.
    NestedRecord copy = volume;
    copy.erase("name");
    std::string type = copy.empty() ? "unknown" : copy.begin().key();
    return type + ":" + stable_hash_hex(canonical_text(copy)).substr(0, 8);
}

void emit_container(const NestedRecord& container, std::set<DeploymentElement>& out) {
    const std::string cname = container.value("name", std::string{"unnamed"});
    const std::string prefix = "container[" + cname + "]";

    if (container.contains("image") && container["image"].is_string())
        out.insert({prefix + ".image", container["image"].get<std::string>()});

    if (container.contains("ports") && container["ports"].is_array()) {
        for (const auto& port : container["ports"]) {
            if (!port.contains("containerPort")) continue;
            std::string proto = port.contains("protocol")
                                    ? canonical_scalar(port["protocol"])
                                    : std::string{"TCP"};
            out.insert({prefix + ".containerPort",
                        canonical_scalar(port["containerPort"]) + "/" + proto});
        }
    }

    if (container.contains("securityContext"))
        emit_security_context(container["securityContext"], prefix + ".securityContext", out);

    if (container.contains("volumeMounts") && container["volumeMounts"].is_array()) {
        for (const auto& mount : container["volumeMounts"]) {
            std::string vname = mount.value("name", std::string{});
            out.insert({prefix + ".volumeMount[" + vname + "]",
                        mount.value("mountPath", std::string{})});
        }
    }

    if (container.contains("env") && container["env"].is_array()) {
        for (const auto& env : container["env"])
            if (env.contains("name"))
                out.insert({prefix + ".env", canonical_scalar(env["name"])});
    }
    if (container.contains("envFrom") && container["envFrom"].is_array()) {
        for (const auto& src : container["envFrom"]) {
            if (src.contains("configMapRef") && src["configMapRef"].is_object())
                out.insert({prefix + ".envFrom",
                            "configMap:" + src["configMapRef"].value("name", std::string{})});
            if (src.contains("secretRef") && src["secretRef"].is_object())
                out.insert({prefix + ".envFrom",
                            "secret:" + src["secretRef"].value("name", std::string{})});
        }
    }
}

} // namespace

std::string RolePermission::to_string() const {
    return (api_group.empty() ? "core" : api_group) + ":" + resource + ":" + verb;
}

std::string to_string(Direction d) {
    return d == Direction::Ingress ? "ingress" : "egress";
}

std::string to_string(Protocol p) {
    switch (p) {
    case Protocol::TCP: return "TCP";
    case Protocol::UDP: return "UDP";
    case Protocol::SCTP: return "SCTP";
    case Protocol::Any: return "ANY";
    case Protocol::None: return "-";
    }
    return "-";
}

Protocol protocol_from_string(const std::string& s) {
    std::string up = s;
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (up == "TCP") return Protocol::TCP;
    if (up == "UDP") return Protocol::UDP;
    if (up == "SCTP") return Protocol::SCTP;
    if (up == "ANY" || up == "*") return Protocol::Any;
    throw MalformedRuleError("unknown protocol: " + s);
}

std::string NetPolElement::to_string() const {
    return kubeharden::to_string(direction) + " " + peer + " " + port + "/" +
           kubeharden::to_string(protocol);
}

std::string DeploymentElement::to_string() const { return path + "=" + value; }

std::string to_string(EntityKey::Kind kind) {
    switch (kind) {
    case EntityKey::Kind::Microservice: return "microservice";
    case EntityKey::Kind::User: return "user";
    case EntityKey::Kind::Pod: return "pod";
    case EntityKey::Kind::Event: return "event";
    }
    return "entity";
}

std::string EntityKey::to_string() const {
    return kubeharden::to_string(kind) + ":" + id;
}

std::set<RolePermission> decompose_role(const ManifestDoc& doc) {
    std::set<RolePermission> out;
    if (!doc.body.is_object() || !doc.body.contains("rules") ||
        !doc.body["rules"].is_array())
        return out;
    for (const auto& rule : doc.body["rules"]) {
        std::vector<std::string> groups;
        if (rule.contains("apiGroups") && rule["apiGroups"].is_array() &&
            !rule["apiGroups"].empty()) {
            for (const auto& g : rule["apiGroups"]) groups.push_back(canonical_scalar(g));
        } else {
            groups.emplace_back("");
        }
        if (!rule.contains("resources") || !rule["resources"].is_array() ||
            rule["resources"].empty())
            throw MalformedRuleError("role rule has no resources");
        if (!rule.contains("verbs") || !rule["verbs"].is_array() || rule["verbs"].empty())
            throw MalformedRuleError("role rule has no verbs");
        for (const auto& group : groups)
            for (const auto& resource : rule["resources"])
                for (const auto& verb : rule["verbs"])
                    out.insert(RolePermission{group, canonical_scalar(resource),
                                              lowercase(canonical_scalar(verb))});
    }
    return out;
}

std::set<NetPolElement> decompose_netpol(const ManifestDoc& doc) {
    std::set<NetPolElement> out;
    if (!doc.body.is_object() || !doc.body.contains("spec") ||
        !doc.body["spec"].is_object())
        return out;
    const auto& spec = doc.body["spec"];

    // Declared policy types; per the NetworkPolicy model an absent list means
    // Ingress, plus Egress when egress rules are present.
    std::set<std::string> types;
    if (spec.contains("policyTypes") && spec["policyTypes"].is_array()) {
        for (const auto& t : spec["policyTypes"]) types.insert(canonical_scalar(t));
    } else {
        types.insert("Ingress");
        if (spec.contains("egress")) types.insert("Egress");
    }

    for (const auto& [type, direction, field] :
         {std::tuple{"Ingress", Direction::Ingress, "ingress"},
          std::tuple{"Egress", Direction::Egress, "egress"}}) {
        if (!types.count(type)) continue;
        const bool has_rules = spec.contains(field) && spec[field].is_array() &&
                               !spec[field].empty();
        if (!has_rules) {
            // Declared type with no rules denies all traffic in that direction.
            out.insert(NetPolElement{direction, "NONE", "-", Protocol::None});
            continue;
        }
        expand_netpol_rules(spec[field], direction,
                            direction == Direction::Ingress ? "from" : "to", out);
    }
    return out;
}

std::set<DeploymentElement> decompose_deployment(const ManifestDoc& doc) {
    std::set<DeploymentElement> out;
    const NestedRecord* pod = find_pod_spec(doc);
    if (pod == nullptr) return out;
    const auto& spec = *pod;

    for (const char* flag : {"hostNetwork", "hostPID", "hostIPC",
                             "automountServiceAccountToken"}) {
        if (spec.contains(flag)) out.insert({flag, canonical_scalar(spec[flag])});
    }
    if (spec.contains("serviceAccountName"))
        out.insert({"serviceAccountName", canonical_scalar(spec["serviceAccountName"])});
    else if (spec.contains("serviceAccount"))
        out.insert({"serviceAccountName", canonical_scalar(spec["serviceAccount"])});

    if (spec.contains("securityContext"))
        emit_security_context(spec["securityContext"], "securityContext", out);

    if (spec.contains("volumes") && spec["volumes"].is_array()) {
        for (const auto& volume : spec["volumes"]) {
            std::string vname = volume.value("name", std::string{});
            out.insert({"volume[" + vname + "]", volume_descriptor(volume)});
        }
    }

    for (const char* list : {"containers", "initContainers"}) {
        if (!spec.contains(list) || !spec[list].is_array()) continue;
        for (const auto& container : spec[list]) emit_container(container, out);
    }
    return out;
}

bool is_restrictive_element(const DeploymentElement& element) {
    auto ends_with = [&](const std::string& suffix) {
        return element.path.size() >= suffix.size() &&
               element.path.compare(element.path.size() - suffix.size(),
                                    suffix.size(), suffix) == 0;
    };
    if (ends_with("capabilities.drop")) return true;
    if (element.value == "false" &&
        (ends_with("privileged") || ends_with("allowPrivilegeEscalation") ||
         ends_with("hostNetwork") || ends_with("hostPID") || ends_with("hostIPC") ||
         ends_with("automountServiceAccountToken")))
        return true;
    if (element.value == "true" &&
        (ends_with("runAsNonRoot") || ends_with("readOnlyRootFilesystem")))
        return true;
    if (ends_with("seccompProfile.type") && element.value == "RuntimeDefault") return true;
    return false;
}

} // namespace kubeharden
