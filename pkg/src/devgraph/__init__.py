"""devgraph: query-log driven extraction and analysis of topic-focused
subcommunities in layered social graphs."""

__version__ = "0.1.0"
