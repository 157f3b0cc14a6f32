"""DOT export of explored graphs"""

import graphviz

from lsatsem.models.events import event_sort_key

ENTRY_NODE = '__start'


def export_dot(graph, name=None):
    """
    Render an ExploredGraph as a DOT digraph

    Nodes are labeled with their state keys. A point-shaped entry node points
    at every initial state, frontier states are dashed, and parallel
    transitions between two states share one edge listing every event.

    Args:
        graph: ExploredGraph
        name: Optional graph name (defaults to the explored automaton's name)

    Returns:
        DOT source text
    """
    dot = graphviz.Digraph(name or graph.name, graph_attr={'rankdir': 'LR'})
    dot.attr('node', shape='box')

    if graph.initial:
        dot.node(ENTRY_NODE, label='', shape='point')

    for i, key in enumerate(graph.states):
        if i in graph.frontier:
            dot.node(f"s{i}", label=key, style='dashed')
        else:
            dot.node(f"s{i}", label=key)

    for i in sorted(graph.initial):
        dot.edge(ENTRY_NODE, f"s{i}")

    # Group parallel transitions per (source, target)
    labels = {}
    for source, event, target in graph.transitions:
        labels.setdefault((source, target), []).append(event)
    for (source, target) in sorted(labels):
        events = sorted(set(labels[(source, target)]), key=event_sort_key)
        dot.edge(f"s{source}", f"s{target}", label='\\n'.join(e.encode() for e in events))

    return dot.source
