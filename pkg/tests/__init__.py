"""Tests for the AI Coding Agent."""