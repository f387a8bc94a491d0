#pragma once

#include "kubeharden/core/manifest.hpp"

#include <compare>
#include <set>
#include <string>

namespace kubeharden {

/// Atomic evaluation unit for Roles: one (apiGroup, resource, verb) triple.
/// The empty apiGroup is the core group. Wildcards ("*") are kept literally
/// and flagged; they are never expanded into concrete values.
struct RolePermission {
    std::string api_group;
    std::string resource;
    std::string verb;

    bool wildcard() const {
        return api_group == "*" || resource == "*" || verb == "*";
    }
    std::string to_string() const;
    auto operator<=>(const RolePermission&) const = default;
};

enum class Direction { Ingress, Egress };
std::string to_string(Direction d);

enum class Protocol { TCP, UDP, SCTP, Any, None };
std::string to_string(Protocol p);
Protocol protocol_from_string(const std::string& s); // throws MalformedRuleError

/// Atomic evaluation unit for NetworkPolicies. peer is a canonicalized
/// selector descriptor ("pod:app=frontend", "ns:team=web", "cidr:10.0.0.0/8",
/// the reserved names "ALL" for an unconstrained peer and "NONE" for the
/// deny-all element of an empty rule list). port is the canonical port text
/// ("8080", a named port, "ANY", or "-" for the deny-all element).
struct NetPolElement {
    Direction direction = Direction::Ingress;
    std::string peer;
    std::string port;
    Protocol protocol = Protocol::TCP;

    bool wildcard_peer() const { return peer == "ALL"; }
    bool wildcard_port() const { return port == "ANY"; }
    bool deny_all() const { return peer == "NONE"; }
    std::string to_string() const;
    auto operator<=>(const NetPolElement&) const = default;
};

/// Atomic evaluation unit for Deployments: a security-relevant field path and
/// its canonical value. Only paths on the allow-list are emitted; paths use
/// container/volume names rather than indices so they are stable across
/// key-order and list-order noise in equivalent documents.
struct DeploymentElement {
    std::string path;
    std::string value;

    std::string to_string() const;
    auto operator<=>(const DeploymentElement&) const = default;
};

/// Grouping key for aggregation: the logical entity a set of events belongs to.
struct EntityKey {
    enum class Kind { Microservice, User, Pod, Event };
    Kind kind = Kind::Microservice;
    std::string id;

    std::string to_string() const;
    auto operator<=>(const EntityKey&) const = default;
};

std::string to_string(EntityKey::Kind kind);

/// Cluster-snapshot description of one microservice, the source material for
/// the provenance association index.
struct MicroserviceInfo {
    std::string name;
    std::string ns;
    std::map<std::string, std::string> labels;
    std::set<std::pair<int, std::string>> ports; // (port, protocol)
    std::set<std::string> images;
    std::set<std::string> service_ips;
    std::set<std::string> executable_paths;
};

/// Cartesian expansion of each rule's apiGroups x resources x verbs,
/// duplicates collapsed. Throws MalformedRuleError when a rule lacks
/// resources or verbs.
std::set<RolePermission> decompose_role(const ManifestDoc& doc);

/// Expands every (direction, peer, port, protocol) combination. Rules without
/// a port constraint expand to the ANY port sentinel; an empty rule list for a
/// declared policy type yields the deny-all sentinel element.
std::set<NetPolElement> decompose_netpol(const ManifestDoc& doc);

/// Emits elements for the security-relevant path allow-list only: pod and
/// container securityContext fields, container ports, host namespaces,
/// volumes and volumeMounts, serviceAccountName, automountServiceAccountToken,
/// image, and env names. Unknown fields are ignored.
std::set<DeploymentElement> decompose_deployment(const ManifestDoc& doc);

/// True for elements whose presence tightens security (capability drops,
/// privileged=false and friends). Refinement never removes these.
bool is_restrictive_element(const DeploymentElement& element);

} // namespace kubeharden
