"""Namespace IRIs and the SKOS terms the checks refer to."""

from .rdf.terms import IRI

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
SKOS_NS = "http://www.w3.org/2004/02/skos/core#"
SKOSXL_NS = "http://www.w3.org/2008/05/skos-xl#"
DCTERMS_NS = "http://purl.org/dc/terms/"
DC_NS = "http://purl.org/dc/elements/1.1/"
FOAF_NS = "http://xmlns.com/foaf/0.1/"

# Out-links into these namespaces describe the data model, not other datasets.
SCHEMA_NAMESPACES = (RDF_NS, RDFS_NS, OWL_NS, SKOS_NS, SKOSXL_NS, DCTERMS_NS,
                     DC_NS, XSD_NS, FOAF_NS)

RDF_TYPE = IRI(RDF_NS + "type")
RDFS_LABEL = IRI(RDFS_NS + "label")


class _Namespace:
    def __init__(self, base: str):
        self._base = base

    def __getattr__(self, name: str) -> IRI:
        if name.startswith("__"):
            raise AttributeError(name)
        return IRI(self._base + name)

    def __getitem__(self, name: str) -> IRI:
        return IRI(self._base + name)


SKOS = _Namespace(SKOS_NS)

LABEL_PROPS = frozenset({SKOS.prefLabel, SKOS.altLabel, SKOS.hiddenLabel})
LABELING_PROPS = LABEL_PROPS | {RDFS_LABEL}
DOC_PROPS = frozenset({SKOS.note, SKOS.changeNote, SKOS.definition, SKOS.editorialNote,
                       SKOS.example, SKOS.historyNote, SKOS.scopeNote})

MAPPING_PROPS = frozenset({SKOS.mappingRelation, SKOS.closeMatch, SKOS.exactMatch,
                           SKOS.broadMatch, SKOS.narrowMatch, SKOS.relatedMatch})
# skos:semanticRelation and every property below it in the SKOS hierarchy.
SEMANTIC_PROPS = frozenset({SKOS.semanticRelation, SKOS.broader, SKOS.narrower,
                            SKOS.broaderTransitive, SKOS.narrowerTransitive,
                            SKOS.related}) | MAPPING_PROPS
